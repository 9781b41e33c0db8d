#pragma once

#include <vector>

#include "nnicp/system.hpp"

namespace nnicp {

/// Piecewise interval-box relaxation of y = sig(x). For each cell
/// [a, b) of width `width` tiling [lo, hi) the implication
///   x >= a and x < b  ->  y >= sig(a) and y < sig(b)
/// is emitted as two clauses, plus the tails
///   x < lo -> y in [0, sig(lo)),   x >= hi -> y in [sig(hi), 1].
/// y bounds are outward rounded, so every exact sigmoid point satisfies
/// every clause. Throws std::invalid_argument when (hi - lo) / width is
/// not integral.
[[nodiscard]] std::vector<Clause> sigmoid_box_clauses(double width, double lo, double hi, VarId x,
                                                      VarId y);

}  // namespace nnicp
