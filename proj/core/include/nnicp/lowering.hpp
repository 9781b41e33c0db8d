#pragma once

#include <stdexcept>

#include "nnicp/expr.hpp"
#include "nnicp/system.hpp"

namespace nnicp {

/// How y = sig(x) is turned into constraints.
struct SigmoidOptions {
  SigmoidEncoding encoding = SigmoidEncoding::dedicated;
  // Approximating encoding: cells of width approx_width covering
  // [approx_lo, approx_hi), plus two unbounded tails.
  double approx_width = 0.5;
  double approx_lo = -8.0;
  double approx_hi = 8.0;

  /// Throws std::invalid_argument for a nonpositive width, an empty range,
  /// or a range that is not an integral number of cells.
  void validate() const;
};

class LoweringError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Constrains z = sig(x) according to `opts`:
///  - dedicated: one SigmoidEq;
///  - compositional: w = -x, u = exp(w), t = 1*u + 1, 1 = z*t with a
///    pinned constant 1;
///  - approximating: the clause set of sigmoid_box_clauses, no equation.
void encode_sigmoid(ConstraintSystem& sys, VarId x, VarId z, const SigmoidOptions& opts);

/// Lowers `expr` to three-address equations over fresh auxiliaries and
/// returns the variable holding its value. Exp outputs start in
/// (0, +inf), sigmoid outputs in (0, 1) ([0, 1] when approximating),
/// other auxiliaries in (-inf, +inf). Constants are pinned point variables.
VarId lower_expression(ConstraintSystem& sys, const Expr& expr, const SigmoidOptions& opts = {});

/// Adds equations making `y` equal to `expr`. A linear expression becomes
/// one AffineSum; `-v` becomes a NegEq; a top-level product, exp or
/// sigmoid defines y directly.
void define_variable(ConstraintSystem& sys, VarId y, const Expr& expr,
                     const SigmoidOptions& opts = {});

}  // namespace nnicp
