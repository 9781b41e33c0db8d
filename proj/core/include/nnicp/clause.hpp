#pragma once

#include <optional>

#include "nnicp/system.hpp"

namespace nnicp {

enum class Truth : std::uint8_t { holds, fails, unknown };

/// A literal holds when the variable's interval lies inside the asserted
/// region, fails when the two are disjoint.
[[nodiscard]] Truth evaluate_literal(const Literal& lit, const Interval& x);

enum class ClauseStatus : std::uint8_t { satisfied, falsified, unit, unresolved };

struct ClauseEvaluation {
  ClauseStatus status;
  /// Set for unit clauses: the atom that must be asserted.
  std::optional<BoundAtom> unit;
};

[[nodiscard]] ClauseEvaluation evaluate_clause(const Clause& clause, const Box& box);

}  // namespace nnicp
