#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <span>
#include <vector>

#include "nnicp/propagate.hpp"
#include "nnicp/system.hpp"

namespace nnicp {

/// A contraction re-schedules dependent equations only if it shrinks the
/// interval by at least `absolute` or by at least `relative` times its
/// width. Smaller contractions are still applied.
struct ProgressThreshold {
  double absolute = 1e-3;
  double relative = 0.01;
};

[[nodiscard]] bool is_significant(const Interval& before, const Interval& after,
                                  const ProgressThreshold& threshold);

using Trail = std::vector<PropagationDelta>;

struct DeduceResult {
  enum class Status : std::uint8_t { fixpoint, conflict, interrupted };
  Status status = Status::fixpoint;
  /// The equation, clause or bound that derived EMPTY.
  Cause cause;
};

/// Fixpoint engine alternating equation propagation with unit propagation
/// over clauses. Mutates only the box and trail it is handed.
class DeductionEngine {
 public:
  explicit DeductionEngine(const ConstraintSystem& system, ProgressThreshold threshold = {});

  /// Schedules every bound, clause and equation.
  DeduceResult deduce(Box& box, Trail& trail);
  /// Schedules only constraints over the variables in `changed`.
  DeduceResult deduce(Box& box, Trail& trail, std::span<const VarId> changed);

  /// `should_stop` is polled every `every` equation propagations.
  void set_interrupt(std::function<bool()> should_stop, std::uint64_t every = 1024);

  [[nodiscard]] std::uint64_t propagations() const { return propagations_; }
  [[nodiscard]] const ConstraintSystem& system() const { return system_; }

 private:
  bool apply(Box& box, Trail& trail, const PropagationDelta& delta, std::uint32_t from_equation);
  void schedule_var(VarId v, bool equations, std::uint32_t skip_equation);
  DeduceResult run(Box& box, Trail& trail);
  void clear_queues();

  const ConstraintSystem& system_;
  ProgressThreshold threshold_;
  std::vector<std::vector<std::uint32_t>> eq_watch_;
  std::vector<std::vector<std::uint32_t>> clause_watch_;
  std::deque<std::uint32_t> eq_queue_;
  std::deque<std::uint32_t> clause_queue_;
  std::vector<char> eq_queued_;
  std::vector<char> clause_queued_;
  std::function<bool()> should_stop_;
  std::uint64_t poll_every_ = 1024;
  std::uint64_t propagations_ = 0;
};

/// One-shot full deduction.
DeduceResult deduce(const ConstraintSystem& system, Box& box, Trail& trail,
                    ProgressThreshold threshold = {});

}  // namespace nnicp
