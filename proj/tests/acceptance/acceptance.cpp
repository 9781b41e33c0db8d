// Acceptance suite: prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <sys/resource.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mp_oracle.hpp"
#include "nnicp/approx.hpp"
#include "nnicp/bench.hpp"
#include "nnicp/etcs.hpp"
#include "nnicp/oracle.hpp"
#include "nnicp/parser.hpp"
#include "nnicp/random_instance.hpp"
#include "nnicp/sigmoid.hpp"

using namespace nnicp;
using ref::Mp;
using Clock = std::chrono::steady_clock;

namespace {

struct Result {
  bool pass;
  std::string detail;
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// Networks with at most 3 layers of at most 4 neurons.
const RandomShape kShape{2, 3, 2, 4, 3.0, 2.0};
constexpr std::uint64_t kAgreementSeed = 1000;
constexpr int kAgreementCount = 100;

struct RunRecord {
  Outcome dedicated;
  Outcome compositional;
  std::uint64_t decisions[2];
  std::uint64_t propagations[2];
  double wall[2];
};

std::vector<RunRecord> agreement_suite() {
  std::vector<RunRecord> out;
  SolverConfig cfg;
  cfg.timeout_s = 60;
  for (int i = 0; i < kAgreementCount; ++i) {
    const auto inst = random_instance(kAgreementSeed + static_cast<std::uint64_t>(i), kShape);
    RunRecord r{};
    SigmoidOptions opts;
    for (int k = 0; k < 2; ++k) {
      opts.encoding = k == 0 ? SigmoidEncoding::dedicated : SigmoidEncoding::compositional;
      const Verdict v = solve(inst.build(opts), cfg);
      (k == 0 ? r.dedicated : r.compositional) = v.outcome;
      r.decisions[k] = v.stats.decisions;
      r.propagations[k] = v.stats.propagations;
      r.wall[k] = v.stats.wall_s;
    }
    out.push_back(r);
  }
  return out;
}

std::vector<RunRecord> g_first_run;

Result propagator_exactness() {
  const auto t0 = Clock::now();
  const Interval X = Interval::closed(-5.8, 1.3);
  const Interval Y = Interval::closed(0.08, 0.97);
  const Interval J = sigmoid_image(X);
  const Interval Yp = fwd_prop_sigmoid(X, Y);
  const Interval Xp = bwd_prop_sigmoid(X, Y);
  const Mp s_lo = ref::mp_sigma(Mp(-5.8));
  const Mp s_hi = ref::mp_sigma(Mp(1.3));
  const Mp si_lo = ref::mp_sigma_inv(Mp(0.08));
  const auto u1 = ref::mp_ulps(J.lo(), s_lo);
  const auto u2 = ref::mp_ulps(J.hi(), s_hi);
  const auto u3 = ref::mp_ulps(Xp.lo(), si_lo);
  // Y' = Y ∩ image: its lower end is Y's own 0.08, the upper end the image's.
  const bool y_ok = Yp.lo() == 0.08 && ref::mp_ulps(Yp.hi(), s_hi) <= 2;
  const bool x_ok = u3 <= 2 && Xp.hi() == 1.3;
  const bool enclose = ref::mp_contains(J, s_lo) && ref::mp_contains(J, s_hi) &&
                       ref::mp_contains(Xp, si_lo);
  const double t = seconds_since(t0);
  return {u1 <= 2 && u2 <= 2 && y_ok && x_ok && enclose && t < 1.0,
          fmt("image [%.17g, %.17g] (%llu, %llu ulp), Y' %s, X' %s (lo %llu ulp), %.3fs", J.lo(), J.hi(),
              (unsigned long long)u1, (unsigned long long)u2, to_string(Yp).c_str(), to_string(Xp).c_str(),
              (unsigned long long)u3, t)};
}

Result soundness_fuzz() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(2024);
  std::size_t lost = 0;
  constexpr int kPoints = 100000;
  for (int i = 0; i < kPoints; ++i) {
    const double x = uniform(rng, -50, 50);
    const Mp y = ref::mp_sigma(Mp(x));
    const Interval X = Interval::make(x - uniform(rng, 0, 5), rng() & 1, x + uniform(rng, 0, 5), rng() & 1);
    const double ylo = ref::mp_down(y);
    const double yhi = ref::mp_up(y);
    const Interval Y = Interval::closed(ylo - uniform(rng, 0, 0.3) * ylo, yhi + uniform(rng, 0, 0.3) * (1 - yhi));
    if (!X.contains(x)) continue;  // strict end landed exactly on x
    if (!ref::mp_contains(fwd_prop_sigmoid(X, Y), y)) ++lost;
    if (!bwd_prop_sigmoid(X, Y).contains(x)) ++lost;
  }
  const double t = seconds_since(t0);
  return {lost == 0 && t < 10.0, fmt("%d points, %zu lost, %.2fs", kPoints, lost, t)};
}

Result verdict_agreement() {
  const auto t0 = Clock::now();
  g_first_run = agreement_suite();
  int disagree = 0, unsat = 0, timeouts = 0;
  double max_wall = 0;
  for (const auto& r : g_first_run) {
    disagree += (r.dedicated == Outcome::unsat) != (r.compositional == Outcome::unsat) ? 1 : 0;
    unsat += r.dedicated == Outcome::unsat ? 1 : 0;
    timeouts += (r.dedicated == Outcome::timeout) + (r.compositional == Outcome::timeout);
    max_wall = std::max({max_wall, r.wall[0], r.wall[1]});
  }
  const double t = seconds_since(t0);
  return {disagree == 0 && t < 1800,
          fmt("%d instances, %d UNSAT, %d disagreements, %d timeouts, slowest %.2fs, %.1fs total", kAgreementCount,
              unsat, disagree, timeouts, max_wall, t)};
}

Result abstraction_consistency() {
  const auto t0 = Clock::now();
  int violations = 0, approx_unsat = 0;
  SolverConfig cfg;
  cfg.timeout_s = 60;
  SigmoidOptions approx;
  approx.encoding = SigmoidEncoding::approximating;
  for (int i = 0; i < 50; ++i) {
    const auto inst = random_instance(kAgreementSeed + static_cast<std::uint64_t>(i), kShape);
    const Outcome a = solve(inst.build(approx), cfg).outcome;
    const Outcome d = g_first_run.empty() ? solve(inst.build(), cfg).outcome : g_first_run[i].dedicated;
    if (a == Outcome::unsat) {
      ++approx_unsat;
      if (d != Outcome::unsat) ++violations;
    }
  }
  const VarId X = var_id(0), Y = var_id(1);
  const auto clauses = sigmoid_box_clauses(0.5, -8, 8, X, Y);
  std::mt19937_64 rng(77);
  int point_violations = 0;
  for (int i = 0; i < 10000; ++i) {
    const Mp x(uniform(rng, -12, 12));
    const Mp y = ref::mp_sigma(x);
    for (const auto& c : clauses) {
      bool any = false;
      for (const auto& lit : c.literals) {
        const BoundAtom a = lit.effective();
        const Mp& v = a.var == X ? x : y;
        const Mp k(a.constant);
        switch (a.rel) {
          case Relation::lt: any = any || v < k; break;
          case Relation::le: any = any || v <= k; break;
          case Relation::gt: any = any || v > k; break;
          case Relation::ge: any = any || v >= k; break;
        }
      }
      if (!any) {
        ++point_violations;
        break;
      }
    }
  }
  const double t = seconds_since(t0);
  return {violations == 0 && point_violations == 0,
          fmt("50 instances, %d approx UNSAT, %d not UNSAT under dedicated; 10000 points, %d violating; %.1fs",
              approx_unsat, violations, point_violations, t)};
}

Result no_false_unsat() {
  const auto t0 = Clock::now();
  const RandomShape tiny{2, 3, 1, 2, 3.0, 2.0};
  int found = 0, violations = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto sys = random_instance(5000 + seed, tiny).build();
    const std::size_t inputs = random_instance(5000 + seed, tiny).net.input_dim;
    const std::size_t per_var = inputs == 2 ? 1000 : 100;
    const auto cex = brute_force_oracle(sys, per_var);
    if (!cex) continue;
    ++found;
    if (solve(sys).outcome == Outcome::unsat) ++violations;
  }
  const double t = seconds_since(t0);
  return {violations == 0 && t < 900,
          fmt("100 instances on 10^6-point grids, %d with counterexamples, %d refuted anyway, %.1fs", found,
              violations, t)};
}

Result preprocessing() {
  const auto t0 = Clock::now();
  std::vector<double> logn, logt;
  bool depth_ok = true;
  double t4096 = 0;
  std::string bad_depth;
  for (int e = 0; e <= 12; ++e) {
    const int n = 1 << e;
    const std::string text = gen_sum_text(n);
    double best = 1e300;
    const int reps = n <= 256 ? 20 : 3;
    ConstraintSystem balanced;
    for (int r = 0; r < reps; ++r) {
      const auto s0 = Clock::now();
      balanced = balance_affine_sums(parse_system(text));
      best = std::min(best, seconds_since(s0));
    }
    std::size_t want = 0;
    while ((1u << want) < static_cast<unsigned>(n + 1)) ++want;
    const std::size_t got = sum_tree_depth(balanced, balanced.lookup("y"));
    if (got != want) {
      depth_ok = false;
      bad_depth += fmt(" n=%d depth %zu!=%zu", n, got, want);
    }
    if (n == 4096) t4096 = best;
    logn.push_back(std::log(static_cast<double>(n)));
    logt.push_back(std::log(best));
  }
  const double mx = std::accumulate(logn.begin(), logn.end(), 0.0) / logn.size();
  const double my = std::accumulate(logt.begin(), logt.end(), 0.0) / logt.size();
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < logn.size(); ++i) {
    sxy += (logn[i] - mx) * (logt[i] - my);
    sxx += (logn[i] - mx) * (logn[i] - mx);
  }
  const double slope = sxy / sxx;
  const auto s0 = Clock::now();
  const Verdict v = solve(gen_sum(256), {});
  const double t256 = seconds_since(s0);
  rusage ru{};
  getrusage(RUSAGE_SELF, &ru);
  const double rss_gb = static_cast<double>(ru.ru_maxrss) / (1024.0 * 1024.0);
  const bool ok = slope <= 1.5 && depth_ok && t4096 < 300 && rss_gb < 16 && v.outcome == Outcome::candidate &&
                  t256 < 300;
  return {ok, fmt("slope %.3f, depths %s%s, n=4096 %.4fs, peak rss %.3f GB, sum_256 %s in %.2fs, %.1fs total", slope,
                  depth_ok ? "ok" : "WRONG", bad_depth.c_str(), t4096, rss_gb, to_string(v.outcome), t256,
                  seconds_since(t0))};
}

Result etcs_physics() {
  int bad = 0;
  std::ostringstream detail;
  struct Case {
    double v, xh, xr, db;
    Mp a;
    bool braking;
  };
  const Case cases[] = {
      {25, 15000, 35000, 19600, Mp(-625) / Mp(39200), false},
      {0, 15000, 35000, 19600, Mp(0), false},
      {25, 0, 500, 100, Mp(-3.125), true},
  };
  for (const auto& c : cases) {
    const auto r = etcs_assess(c.v, c.xh, c.xr);
    const double direct = -(c.v * c.v) / (2 * (c.xr - (c.xh + 400.0)));
    const bool ok = r.braking_distance == c.db && ulp_distance(r.required_deceleration, direct) <= 1 &&
                    ref::mp_ulps(r.required_deceleration, c.a) <= 1 && r.braking == c.braking &&
                    etcs_ground_truth(c.v, c.xh, c.xr) == c.braking;
    bad += ok ? 0 : 1;
    detail << " (" << c.v << "," << c.xh << "," << c.xr << ")->d_b=" << r.braking_distance
           << ",a=" << r.required_deceleration << (r.braking ? ",brake" : ",no brake");
  }
  return {bad == 0, fmt("%d/3 exact:", 3 - bad) + detail.str()};
}

Result determinism() {
  const auto t0 = Clock::now();
  if (g_first_run.empty()) g_first_run = agreement_suite();
  const auto second = agreement_suite();
  int diff = 0;
  for (std::size_t i = 0; i < second.size(); ++i) {
    const auto& a = g_first_run[i];
    const auto& b = second[i];
    const bool same = a.dedicated == b.dedicated && a.compositional == b.compositional &&
                      a.decisions[0] == b.decisions[0] && a.decisions[1] == b.decisions[1] &&
                      a.propagations[0] == b.propagations[0] && a.propagations[1] == b.propagations[1];
    // A timeout depends on wall time and is exempt from bit-identity.
    const bool timed = a.dedicated == Outcome::timeout || a.compositional == Outcome::timeout ||
                       b.dedicated == Outcome::timeout || b.compositional == Outcome::timeout;
    diff += same || timed ? 0 : 1;
  }
  return {diff == 0, fmt("%zu instances re-run, %d differ, %.1fs", second.size(), diff, seconds_since(t0))};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Result()> run;
  };
  const Criterion criteria[] = {
      {"1 propagator exactness", propagator_exactness},
      {"2 soundness fuzz", soundness_fuzz},
      {"3 dedicated/compositional agreement", verdict_agreement},
      {"4 abstraction consistency", abstraction_consistency},
      {"5 no false UNSAT", no_false_unsat},
      {"6 preprocessing", preprocessing},
      {"7 ETCS physics", etcs_physics},
      {"8 determinism", determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Result r{false, ""};
    try {
      r = c.run();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    failed += r.pass ? 0 : 1;
    std::printf("%s  %s: %s\n", r.pass ? "PASS" : "FAIL", c.name, r.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(std::size(criteria)) - failed, std::size(criteria));
  return failed == 0 ? 0 : 1;
}
