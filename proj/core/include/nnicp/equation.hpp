#pragma once

#include <variant>
#include <vector>

#include "nnicp/interval.hpp"

namespace nnicp {

// Definitional equations in three-address form. Each has exactly one
// output variable `y`.

struct SigmoidEq {
  VarId y;
  VarId x;
  friend bool operator==(const SigmoidEq&, const SigmoidEq&) = default;
};

struct ExpEq {
  VarId y;
  VarId x;
  friend bool operator==(const ExpEq&, const ExpEq&) = default;
};

struct NegEq {
  VarId y;
  VarId x;
  friend bool operator==(const NegEq&, const NegEq&) = default;
};

struct ProductEq {
  VarId y;
  VarId x1;
  VarId x2;
  friend bool operator==(const ProductEq&, const ProductEq&) = default;
};

struct AffineTerm {
  double coeff;
  VarId var;
  friend bool operator==(const AffineTerm&, const AffineTerm&) = default;
};

/// y = sum(coeff_i * x_i) + constant. At least one term; coefficients are
/// finite and nonzero.
struct AffineSumEq {
  VarId y;
  std::vector<AffineTerm> terms;
  double constant = 0.0;
  friend bool operator==(const AffineSumEq&, const AffineSumEq&) = default;
};

using Equation = std::variant<SigmoidEq, ExpEq, NegEq, ProductEq, AffineSumEq>;

[[nodiscard]] VarId output_of(const Equation& eq);
/// Right-hand-side variables in order of appearance (may repeat).
[[nodiscard]] std::vector<VarId> inputs_of(const Equation& eq);
[[nodiscard]] const char* kind_name(const Equation& eq);

}  // namespace nnicp
