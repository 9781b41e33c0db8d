#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "nnicp/system.hpp"

namespace nnicp {

class OracleError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Grid search for a point satisfying `sys`.
///
/// Free variables (those no equation determines once pinned constants and
/// earlier free variables are known, at most 4) are sampled on a uniform
/// grid of `points_per_var` values over their bounded initial interval
/// narrowed by their unit bounds. Every other variable is computed in
/// extended precision by solving each equation for its single unknown.
/// Atoms on free variables are checked exactly; atoms, clauses and initial
/// intervals on computed variables must hold with a small inward margin,
/// so any point returned is a genuine solution up to evaluation error far
/// below that margin. Initial intervals of auxiliary variables are implied
/// by their equations and not rechecked.
///
/// Returns the value of every variable at the first such point, or none.
/// Throws OracleError when there are more than 4 free variables, a free
/// variable is unbounded, or the equations are not feedforward.
[[nodiscard]] std::optional<std::vector<double>> brute_force_oracle(const ConstraintSystem& sys,
                                                                    std::size_t points_per_var);

}  // namespace nnicp
