#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nnicp/deduce.hpp"
#include "nnicp/system.hpp"

namespace nnicp {

// Both heuristics first consider the free variables of the system (those
// the equations do not determine, see evaluation_order) and move on to the
// derived ones only once no free variable can be split.
enum class SplitHeuristic : std::uint8_t { round_robin, widest_first };
enum class BranchOrder : std::uint8_t { lower_first, upper_first };

struct SolverConfig {
  /// Minimum splitting width: a variable is split only while its width
  /// exceeds max(msw, msw_relative * its width after root deduction).
  double msw = 1e-4;
  double msw_relative = 1e-6;
  double timeout_s = 60.0;
  SplitHeuristic split = SplitHeuristic::round_robin;
  BranchOrder branch = BranchOrder::lower_first;
  ProgressThreshold progress;
  /// 0 means unlimited. Exceeding either yields RESOURCE_OUT.
  std::uint64_t max_decisions = 0;
  std::size_t max_trail_entries = 50'000'000;

  /// Throws std::invalid_argument unless msw > 0 and timeout > 0.
  void validate() const;
};

/// Timeout preset used for the long benchmark runs (4 hours).
inline constexpr double kBenchmarkTimeoutSeconds = 14400.0;

enum class Outcome : std::uint8_t { unsat, candidate, timeout, resource_out };

[[nodiscard]] const char* to_string(Outcome o);

struct SolveStats {
  std::uint64_t decisions = 0;
  std::uint64_t propagations = 0;
  std::uint64_t conflicts = 0;
  std::size_t max_depth = 0;
  double wall_s = 0.0;
};

struct Verdict {
  Outcome outcome = Outcome::timeout;
  /// Present iff outcome == candidate.
  std::optional<Box> candidate;
  SolveStats stats;
};

/// Branch-and-prune search with chronological backtracking over a trail
/// of bound deltas. Single-threaded; instances share nothing.
class Solver {
 public:
  Solver(const ConstraintSystem& system, SolverConfig config);

  Verdict solve();

  // Step-wise interface, mainly for tests. `init` resets the box to the
  // initial intervals and performs root deduction.
  DeduceResult init();
  [[nodiscard]] const Box& box() const { return box_; }
  [[nodiscard]] std::size_t level() const { return decisions_.size(); }
  /// Opens a decision level restricting `v` to `region`; returns false if
  /// deduction hits a conflict (the level stays open).
  bool decide(VarId v, const Interval& region);
  /// Undoes the most recent decision level entirely.
  void backtrack();

  /// The variable the configured heuristic would split next, if any.
  [[nodiscard]] std::optional<VarId> pick_split_var();
  [[nodiscard]] double min_split_width(VarId v) const { return msw_.at(index(v)); }

 private:
  struct Decision {
    VarId var;
    Interval alternative;
    std::size_t trail_mark;
    bool flipped = false;
  };

  bool splittable(VarId v) const;
  void undo_to(std::size_t mark);
  DeduceResult assume(VarId v, const Interval& region);
  bool out_of_time() const;

  const ConstraintSystem& system_;
  SolverConfig config_;
  DeductionEngine engine_;
  Box box_;
  Trail trail_;
  std::vector<Decision> decisions_;
  std::vector<double> msw_;
  std::vector<bool> free_;
  std::size_t rr_cursor_ = 0;
  SolveStats stats_;
  std::chrono::steady_clock::time_point deadline_;
};

[[nodiscard]] Verdict solve(const ConstraintSystem& system, const SolverConfig& config = {});

/// Split point for an interval per the solver policy: midpoint when
/// bounded, +-max(1, 2|finite bound|) when half-unbounded, 0 when entire.
[[nodiscard]] double split_point(const Interval& x);

}  // namespace nnicp
