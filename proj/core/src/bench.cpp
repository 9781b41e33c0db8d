#include "nnicp/bench.hpp"

#include <atomic>
#include <charconv>
#include <fstream>
#include <mutex>
#include <nlohmann/json.hpp>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "nnicp/mnist.hpp"
#include "nnicp/parser.hpp"
#include "nnicp/random_instance.hpp"

namespace nnicp {

namespace {

std::string shortest(double x) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return {buf, p};
}

std::size_t parse_index(std::string_view s, const char* what) {
  std::size_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size() || s.empty())
    throw std::invalid_argument(std::string("bad ") + what + " '" + std::string(s) + "'");
  return v;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

}  // namespace

ConstraintSystem gen_sum(int n) {
  if (n < 1) throw std::invalid_argument("sum benchmark needs n >= 1");
  ConstraintSystem sys;
  sys.metadata.origin = "sum_" + std::to_string(n);
  AffineSumEq eq;
  const double w = 1.0 / n;
  for (int i = 0; i <= n; ++i)
    eq.terms.push_back({w, sys.add_variable("x" + std::to_string(i), Interval::closed(0.0, 1.0))});
  eq.y = sys.add_variable("y", Interval::closed(0.0, 1.0));
  sys.add_equation(std::move(eq));
  return sys;
}

std::string gen_sum_text(int n) { return to_text(gen_sum(n)); }

ConstraintSystem build_property(std::string_view ref, const Network& net, const SigmoidOptions& opts) {
  const auto colon = ref.find(':');
  if (colon == std::string_view::npos) throw std::invalid_argument("bad property '" + std::string(ref) + "'");
  const std::string_view kind = ref.substr(0, colon);
  const std::string_view rest = ref.substr(colon + 1);
  if (kind == "etcs") return build_etcs_scenario(parse_etcs_scenario(rest), net, opts);
  if (kind == "mnist") {
    const auto c2 = rest.rfind(':');
    if (c2 == std::string_view::npos || c2 == 0) throw std::invalid_argument("bad mnist property");
    const auto c1 = rest.rfind(':', c2 - 1);
    if (c1 == std::string_view::npos) throw std::invalid_argument("bad mnist property");
    const auto samples = load_samples_csv(std::string(rest.substr(0, c1)));
    const std::size_t idx = parse_index(rest.substr(c1 + 1, c2 - c1 - 1), "sample index");
    const std::size_t rival = parse_index(rest.substr(c2 + 1), "rival digit");
    if (idx >= samples.size()) throw std::invalid_argument("sample index out of range");
    return build_mnist_robustness({samples[idx], static_cast<int>(rival), 0.01}, net, opts);
  }
  throw std::invalid_argument("unknown property kind '" + std::string(kind) + "'");
}

void write_csv_row(std::ostream& os, const BenchRow& r) {
  os << csv_field(r.instance) << ',' << r.encoding << ',' << r.verdict << ',' << shortest(r.wall_s) << ','
     << r.decisions << ',' << r.propagations << ',' << r.conflicts << '\n';
}

SigmoidEncoding parse_encoding(std::string_view s) {
  if (s == "dedicated") return SigmoidEncoding::dedicated;
  if (s == "compositional") return SigmoidEncoding::compositional;
  if (s == "approx" || s == "approximating") return SigmoidEncoding::approximating;
  throw std::invalid_argument("unknown encoding '" + std::string(s) + "'");
}

SplitHeuristic parse_split(std::string_view s) {
  if (s == "round_robin") return SplitHeuristic::round_robin;
  if (s == "widest_first") return SplitHeuristic::widest_first;
  throw std::invalid_argument("unknown split heuristic '" + std::string(s) + "'");
}

BranchOrder parse_branch(std::string_view s) {
  if (s == "lower_first") return BranchOrder::lower_first;
  if (s == "upper_first") return BranchOrder::upper_first;
  throw std::invalid_argument("unknown branch order '" + std::string(s) + "'");
}

MatrixSpec parse_matrix(std::string_view json_text, const std::filesystem::path& base_dir) {
  using nlohmann::json;
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("manifest: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("manifest must be a JSON object");
  MatrixSpec m;
  try {
    for (const auto& p : j.value("networks", json::array())) {
      std::filesystem::path path = p.get<std::string>();
      m.networks.push_back(path.is_relative() && !base_dir.empty() ? base_dir / path : path);
    }
    for (const auto& p : j.value("properties", json::array())) m.properties.push_back(p.get<std::string>());
    for (const auto& e : j.value("encodings", json::array({"dedicated"})))
      m.encodings.push_back(parse_encoding(e.get<std::string>()));
    m.sigmoid.approx_width = j.value("approx_width", m.sigmoid.approx_width);
    if (j.contains("approx_range")) {
      const auto& r = j.at("approx_range");
      if (!r.is_array() || r.size() != 2) throw std::invalid_argument("approx_range must be [lo, hi]");
      m.sigmoid.approx_lo = r[0].get<double>();
      m.sigmoid.approx_hi = r[1].get<double>();
    }
    m.sigmoid.validate();
    m.sums = parse_sum_form(j.value("sums", std::string("nary")));
    m.jobs = j.value("jobs", 1u);
    if (m.jobs == 0) m.jobs = 1;
    if (j.contains("solver")) {
      const auto& s = j.at("solver");
      SolverConfig& c = m.solver;
      c.msw = s.value("msw", c.msw);
      c.msw_relative = s.value("msw_relative", c.msw_relative);
      c.timeout_s = s.value("timeout_s", c.timeout_s);
      c.max_decisions = s.value("max_decisions", c.max_decisions);
      if (s.contains("split")) c.split = parse_split(s.at("split").get<std::string>());
      if (s.contains("branch")) c.branch = parse_branch(s.at("branch").get<std::string>());
    }
    m.solver.validate();
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("manifest: ") + e.what());
  }
  return m;
}

MatrixSpec load_matrix(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_matrix(ss.str(), path.parent_path());
}

std::vector<BenchRow> run_matrix(const MatrixSpec& spec, std::ostream* csv) {
  struct Cell {
    std::size_t net;
    std::size_t prop;
    SigmoidEncoding enc;
  };
  std::vector<Cell> cells;
  for (std::size_t n = 0; n < spec.networks.size(); ++n)
    for (std::size_t p = 0; p < spec.properties.size(); ++p)
      for (SigmoidEncoding e : spec.encodings) cells.push_back({n, p, e});

  std::vector<BenchRow> rows(cells.size());
  std::vector<bool> done(cells.size(), false);
  std::size_t written = 0;
  std::mutex mu;
  if (csv) *csv << kBenchCsvHeader << '\n' << std::flush;

  auto run_cell = [&](std::size_t i) {
    const Cell& c = cells[i];
    BenchRow row;
    row.instance = spec.networks[c.net].stem().string() + "/" + spec.properties[c.prop];
    row.encoding = to_string(c.enc);
    try {
      const Network net = load_network(spec.networks[c.net]);
      SigmoidOptions opts = spec.sigmoid;
      opts.encoding = c.enc;
      const ConstraintSystem sys = apply_sum_form(build_property(spec.properties[c.prop], net, opts), spec.sums);
      const Verdict v = solve(sys, spec.solver);
      row.verdict = to_string(v.outcome);
      row.wall_s = v.stats.wall_s;
      row.decisions = v.stats.decisions;
      row.propagations = v.stats.propagations;
      row.conflicts = v.stats.conflicts;
    } catch (const std::exception&) {
      row.verdict = "error";
    }
    std::lock_guard lock(mu);
    rows[i] = std::move(row);
    done[i] = true;
    while (written < cells.size() && done[written]) {
      if (csv) write_csv_row(*csv, rows[written]);
      ++written;
    }
    if (csv) csv->flush();
  };

  const unsigned jobs = std::max(1u, std::min<unsigned>(spec.jobs, static_cast<unsigned>(cells.size())));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < cells.size(); ++i) run_cell(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t)
      pool.emplace_back([&] {
        for (std::size_t i; (i = next.fetch_add(1)) < cells.size();) run_cell(i);
      });
    for (auto& t : pool) t.join();
  }
  return rows;
}

std::vector<EtcsDataRow> gen_etcs_data(std::size_t count, std::uint64_t seed, const EtcsParams& params) {
  params.validate();
  std::mt19937_64 rng(seed);
  std::vector<EtcsDataRow> rows;
  rows.reserve(count);
  while (rows.size() < count) {
    const double v = uniform(rng, 0.0, params.max_velocity);
    const double xh = uniform(rng, 0.0, params.track_length);
    const double xr = uniform(rng, 0.0, params.track_length);
    if (xr - (xh + params.safety_distance) < 0) continue;
    rows.push_back({v, xh, xr, etcs_ground_truth(v, xh, xr, params)});
  }
  return rows;
}

void write_etcs_data(std::ostream& os, const std::vector<EtcsDataRow>& rows) {
  os << "v,x_h,x_r,braking\n";
  for (const auto& r : rows)
    os << shortest(r.v) << ',' << shortest(r.x_head) << ',' << shortest(r.x_rear) << ',' << (r.braking ? 1 : 0)
       << '\n';
}

}  // namespace nnicp
