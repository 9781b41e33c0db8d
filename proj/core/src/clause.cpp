#include "nnicp/clause.hpp"

namespace nnicp {

Truth evaluate_literal(const Literal& lit, const Interval& x) {
  const Interval region = atom_region(lit.effective());
  if (x.is_subset_of(region)) return Truth::holds;
  if (intersect(x, region).is_empty()) return Truth::fails;
  return Truth::unknown;
}

ClauseEvaluation evaluate_clause(const Clause& clause, const Box& box) {
  const Literal* open = nullptr;
  std::size_t open_count = 0;
  for (const auto& lit : clause.literals) {
    switch (evaluate_literal(lit, box[lit.atom.var])) {
      case Truth::holds: return {ClauseStatus::satisfied, std::nullopt};
      case Truth::fails: break;
      case Truth::unknown:
        open = &lit;
        ++open_count;
        break;
    }
  }
  if (open_count == 0) return {ClauseStatus::falsified, std::nullopt};
  if (open_count == 1) return {ClauseStatus::unit, open->effective()};
  return {ClauseStatus::unresolved, std::nullopt};
}

}  // namespace nnicp
