#include "nnicp/deduce.hpp"

#include <algorithm>

#include "nnicp/clause.hpp"

namespace nnicp {
namespace {

constexpr std::uint32_t kNoEquation = 0xffffffffu;

bool moved_enough(double before, double after, const ProgressThreshold& t) {
  const double shift = std::fabs(after - before);
  return shift >= t.absolute || shift >= t.relative * std::fabs(before);
}

}  // namespace

bool is_significant(const Interval& before, const Interval& after, const ProgressThreshold& t) {
  if (after.is_empty()) return true;
  if (before.is_empty()) return false;
  if ((before.lo() == -kInf && after.lo() != -kInf) || (before.hi() == kInf && after.hi() != kInf))
    return true;
  const double w_before = width(before);
  if (std::isinf(w_before)) {
    // One side is unbounded on both intervals; judge the finite side.
    if (before.lo() != -kInf) return moved_enough(before.lo(), after.lo(), t);
    if (before.hi() != kInf) return moved_enough(before.hi(), after.hi(), t);
    return false;
  }
  const double shrink = w_before - width(after);
  return shrink >= t.absolute || shrink >= t.relative * w_before;
}

DeductionEngine::DeductionEngine(const ConstraintSystem& system, ProgressThreshold threshold)
    : system_(system),
      threshold_(threshold),
      eq_watch_(system.num_vars()),
      clause_watch_(system.num_vars()),
      eq_queued_(system.equations().size(), 0),
      clause_queued_(system.clauses().size(), 0) {
  const auto& eqs = system.equations();
  for (std::uint32_t i = 0; i < eqs.size(); ++i) {
    std::vector<VarId> vars = inputs_of(eqs[i]);
    vars.push_back(output_of(eqs[i]));
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    for (VarId v : vars) eq_watch_[index(v)].push_back(i);
  }
  const auto& clauses = system.clauses();
  for (std::uint32_t i = 0; i < clauses.size(); ++i) {
    std::vector<VarId> vars;
    for (const auto& lit : clauses[i].literals) vars.push_back(lit.atom.var);
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    for (VarId v : vars) clause_watch_[index(v)].push_back(i);
  }
}

void DeductionEngine::set_interrupt(std::function<bool()> should_stop, std::uint64_t every) {
  should_stop_ = std::move(should_stop);
  poll_every_ = std::max<std::uint64_t>(every, 1);
}

void DeductionEngine::schedule_var(VarId v, bool equations, std::uint32_t skip_equation) {
  for (std::uint32_t c : clause_watch_[index(v)]) {
    if (!clause_queued_[c]) {
      clause_queued_[c] = 1;
      clause_queue_.push_back(c);
    }
  }
  if (!equations) return;
  for (std::uint32_t e : eq_watch_[index(v)]) {
    if (e != skip_equation && !eq_queued_[e]) {
      eq_queued_[e] = 1;
      eq_queue_.push_back(e);
    }
  }
}

bool DeductionEngine::apply(Box& box, Trail& trail, const PropagationDelta& delta,
                            std::uint32_t from_equation) {
  box[delta.var] = delta.new_value;
  trail.push_back(delta);
  if (delta.new_value.is_empty()) return false;
  schedule_var(delta.var, is_significant(delta.old_value, delta.new_value, threshold_), from_equation);
  return true;
}

void DeductionEngine::clear_queues() {
  for (auto e : eq_queue_) eq_queued_[e] = 0;
  for (auto c : clause_queue_) clause_queued_[c] = 0;
  eq_queue_.clear();
  clause_queue_.clear();
}

DeduceResult DeductionEngine::deduce(Box& box, Trail& trail) {
  const auto& bounds = system_.bounds();
  for (std::uint32_t i = 0; i < bounds.size(); ++i) {
    const VarId v = bounds[i].var;
    const Interval next = intersect(box[v], atom_region(bounds[i]));
    if (next == box[v]) continue;
    const PropagationDelta delta{v, box[v], next, {Cause::Kind::bound, i}};
    if (!apply(box, trail, delta, kNoEquation)) {
      clear_queues();
      return {DeduceResult::Status::conflict, delta.cause};
    }
  }
  for (std::uint32_t i = 0; i < system_.equations().size(); ++i) {
    if (!eq_queued_[i]) {
      eq_queued_[i] = 1;
      eq_queue_.push_back(i);
    }
  }
  for (std::uint32_t i = 0; i < system_.clauses().size(); ++i) {
    if (!clause_queued_[i]) {
      clause_queued_[i] = 1;
      clause_queue_.push_back(i);
    }
  }
  return run(box, trail);
}

DeduceResult DeductionEngine::deduce(Box& box, Trail& trail, std::span<const VarId> changed) {
  for (VarId v : changed) schedule_var(v, true, kNoEquation);
  return run(box, trail);
}

DeduceResult DeductionEngine::run(Box& box, Trail& trail) {
  const auto& eqs = system_.equations();
  const auto& clauses = system_.clauses();
  for (;;) {
    while (!clause_queue_.empty()) {
      const std::uint32_t c = clause_queue_.front();
      clause_queue_.pop_front();
      clause_queued_[c] = 0;
      const ClauseEvaluation ev = evaluate_clause(clauses[c], box);
      const Cause cause{Cause::Kind::clause, c};
      if (ev.status == ClauseStatus::falsified) {
        clear_queues();
        return {DeduceResult::Status::conflict, cause};
      }
      if (ev.status != ClauseStatus::unit) continue;
      const VarId v = ev.unit->var;
      const Interval next = intersect(box[v], atom_region(*ev.unit));
      if (next == box[v]) continue;
      if (!apply(box, trail, {v, box[v], next, cause}, kNoEquation)) {
        clear_queues();
        return {DeduceResult::Status::conflict, cause};
      }
    }
    if (eq_queue_.empty()) return {DeduceResult::Status::fixpoint, {}};

    const std::uint32_t e = eq_queue_.front();
    eq_queue_.pop_front();
    eq_queued_[e] = 0;
    ++propagations_;
    if (should_stop_ && propagations_ % poll_every_ == 0 && should_stop_()) {
      clear_queues();
      return {DeduceResult::Status::interrupted, {}};
    }
    const Cause cause{Cause::Kind::equation, e};
    for (const auto& delta : propagate(eqs[e], box, cause)) {
      if (!apply(box, trail, delta, e)) {
        clear_queues();
        return {DeduceResult::Status::conflict, cause};
      }
    }
  }
}

DeduceResult deduce(const ConstraintSystem& system, Box& box, Trail& trail,
                    ProgressThreshold threshold) {
  DeductionEngine engine(system, threshold);
  return engine.deduce(box, trail);
}

}  // namespace nnicp
