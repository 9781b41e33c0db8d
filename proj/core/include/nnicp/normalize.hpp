#pragma once

#include <string_view>

#include "nnicp/system.hpp"

namespace nnicp {

/// Restructures every AffineSum with more than two terms into a balanced
/// binary tree of partial-sum auxiliaries of depth ceil(log2 k). The real
/// solution set over the original variables is unchanged.
[[nodiscard]] ConstraintSystem balance_affine_sums(const ConstraintSystem& sys);

/// The unbalanced alternative: a left-deep chain of depth k - 1. Kept for
/// comparison runs.
[[nodiscard]] ConstraintSystem chain_affine_sums(const ConstraintSystem& sys);

/// Depth of the summation tree defining `y`: 0 if y is not defined by an
/// AffineSum, otherwise 1 + the deepest auxiliary operand that is itself
/// defined by an AffineSum.
[[nodiscard]] std::size_t sum_tree_depth(const ConstraintSystem& sys, VarId y);

enum class SumForm : std::uint8_t { nary, balanced, chain };

[[nodiscard]] SumForm parse_sum_form(std::string_view s);
/// Identity for nary, otherwise the matching restructuring above.
[[nodiscard]] ConstraintSystem apply_sum_form(const ConstraintSystem& sys, SumForm form);

}  // namespace nnicp
