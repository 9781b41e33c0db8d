#include "nnicp/solver.hpp"

#include <algorithm>
#include <stdexcept>

namespace nnicp {

void SolverConfig::validate() const {
  if (!(msw > 0.0)) throw std::invalid_argument("msw must be positive");
  if (!(msw_relative >= 0.0)) throw std::invalid_argument("relative msw must be nonnegative");
  if (!(timeout_s > 0.0)) throw std::invalid_argument("timeout must be positive");
}

const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::unsat: return "UNSAT";
    case Outcome::candidate: return "CANDIDATE";
    case Outcome::timeout: return "TIMEOUT";
    case Outcome::resource_out: return "RESOURCE_OUT";
  }
  return "?";
}

double split_point(const Interval& x) {
  constexpr double kMax = std::numeric_limits<double>::max();
  const double lo = x.lo();
  const double hi = x.hi();
  if (lo == -kInf && hi == kInf) return 0.0;
  if (hi == kInf) return std::min(kMax, std::max(1.0, 2.0 * std::fabs(lo)));
  if (lo == -kInf) return -std::min(kMax, std::max(1.0, 2.0 * std::fabs(hi)));
  const double mid = lo + (hi - lo) / 2.0;
  return std::isfinite(mid) ? mid : lo / 2.0 + hi / 2.0;
}

Solver::Solver(const ConstraintSystem& system, SolverConfig config)
    : system_(system), config_(config), engine_(system, config.progress) {
  config_.validate();
  free_.assign(system_.num_vars(), false);
  for (VarId v : evaluation_order(system_).free) free_[index(v)] = true;
  engine_.set_interrupt([this] { return out_of_time(); }, 1024);
  deadline_ = std::chrono::steady_clock::now() +
              std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                  std::chrono::duration<double>(config_.timeout_s));
}

bool Solver::out_of_time() const { return std::chrono::steady_clock::now() >= deadline_; }

DeduceResult Solver::init() {
  box_ = system_.initial_box();
  trail_.clear();
  decisions_.clear();
  rr_cursor_ = 0;
  msw_.assign(system_.num_vars(), config_.msw);
  for (std::uint32_t i = 0; i < box_.size(); ++i) {
    if (box_[var_id(i)].is_empty()) return {DeduceResult::Status::conflict, {}};
  }
  const DeduceResult root = engine_.deduce(box_, trail_);
  if (root.status == DeduceResult::Status::fixpoint) {
    for (std::size_t i = 0; i < box_.size(); ++i) {
      const double w = width(box_[var_id(i)]);
      if (std::isfinite(w)) msw_[i] = std::max(config_.msw, config_.msw_relative * w);
    }
  }
  return root;
}

bool Solver::splittable(VarId v) const {
  const Interval& x = box_[v];
  if (x.is_point() || !(width(x) > msw_[index(v)])) return false;
  const double m = split_point(x);
  return m > x.lo() && m < x.hi();
}

std::optional<VarId> Solver::pick_split_var() {
  const std::size_t n = box_.size();
  for (const bool tier : {true, false}) {
    auto eligible = [&](std::size_t i) { return (!tier || free_[i]) && splittable(var_id(i)); };
    if (config_.split == SplitHeuristic::round_robin) {
      for (std::size_t k = 0; k < n; ++k) {
        const std::size_t i = (rr_cursor_ + k) % n;
        if (eligible(i)) {
          rr_cursor_ = i + 1;
          return var_id(i);
        }
      }
      continue;
    }
    std::optional<VarId> best;
    double best_width = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!eligible(i)) continue;
      const double w = width(box_[var_id(i)]);
      if (!best || w > best_width) {
        best = var_id(i);
        best_width = w;
      }
    }
    if (best) return best;
  }
  return std::nullopt;
}

void Solver::undo_to(std::size_t mark) {
  while (trail_.size() > mark) {
    box_[trail_.back().var] = trail_.back().old_value;
    trail_.pop_back();
  }
}

DeduceResult Solver::assume(VarId v, const Interval& region) {
  const Interval next = intersect(box_[v], region);
  const Cause cause{Cause::Kind::decision, static_cast<std::uint32_t>(decisions_.size())};
  if (next.is_empty()) return {DeduceResult::Status::conflict, cause};
  if (next != box_[v]) {
    trail_.push_back({v, box_[v], next, cause});
    box_[v] = next;
  }
  const VarId changed[] = {v};
  return engine_.deduce(box_, trail_, changed);
}

bool Solver::decide(VarId v, const Interval& region) {
  decisions_.push_back({v, Interval::empty(), trail_.size(), true});
  ++stats_.decisions;
  stats_.max_depth = std::max(stats_.max_depth, decisions_.size());
  return assume(v, region).status != DeduceResult::Status::conflict;
}

void Solver::backtrack() {
  if (decisions_.empty()) throw std::logic_error("backtrack at decision level 0");
  undo_to(decisions_.back().trail_mark);
  decisions_.pop_back();
}

Verdict solve(const ConstraintSystem& system, const SolverConfig& config) {
  return Solver(system, config).solve();
}

Verdict Solver::solve() {
  const auto start = std::chrono::steady_clock::now();
  deadline_ = start + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                          std::chrono::duration<double>(config_.timeout_s));
  stats_ = {};
  const std::uint64_t props_before = engine_.propagations();
  Verdict verdict;
  auto finish = [&](Outcome outcome) {
    verdict.outcome = outcome;
    if (outcome == Outcome::candidate) verdict.candidate = box_;
    stats_.propagations = engine_.propagations() - props_before;
    stats_.wall_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    verdict.stats = stats_;
    return verdict;
  };

  const DeduceResult root = init();
  if (root.status == DeduceResult::Status::conflict) return finish(Outcome::unsat);
  if (root.status == DeduceResult::Status::interrupted) return finish(Outcome::timeout);

  for (;;) {
    if (out_of_time()) return finish(Outcome::timeout);
    if ((config_.max_decisions != 0 && stats_.decisions >= config_.max_decisions) ||
        trail_.size() > config_.max_trail_entries) {
      return finish(Outcome::resource_out);
    }
    const std::optional<VarId> v = pick_split_var();
    if (!v) return finish(Outcome::candidate);

    const double m = split_point(box_[*v]);
    const Interval lower = Interval::make(-kInf, true, m, false);
    const Interval upper = Interval::make(m, true, kInf, true);
    const bool lower_first = config_.branch == BranchOrder::lower_first;
    decisions_.push_back({*v, lower_first ? upper : lower, trail_.size(), false});
    ++stats_.decisions;
    stats_.max_depth = std::max(stats_.max_depth, decisions_.size());
    DeduceResult r = assume(*v, lower_first ? lower : upper);

    while (r.status == DeduceResult::Status::conflict) {
      ++stats_.conflicts;
      while (!decisions_.empty() && decisions_.back().flipped) {
        undo_to(decisions_.back().trail_mark);
        decisions_.pop_back();
      }
      if (decisions_.empty()) return finish(Outcome::unsat);
      if (out_of_time()) return finish(Outcome::timeout);
      Decision& d = decisions_.back();
      undo_to(d.trail_mark);
      d.flipped = true;
      r = assume(d.var, d.alternative);
    }
    if (r.status == DeduceResult::Status::interrupted) return finish(Outcome::timeout);
  }
}

}  // namespace nnicp
