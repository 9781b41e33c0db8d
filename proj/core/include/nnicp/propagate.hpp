#pragma once

#include <cstdint>
#include <vector>

#include "nnicp/equation.hpp"

namespace nnicp {

/// What produced a bound change.
struct Cause {
  enum class Kind : std::uint8_t { none, equation, clause, bound, decision };
  Kind kind = Kind::none;
  std::uint32_t index = 0;
  friend bool operator==(const Cause&, const Cause&) = default;
};

/// One trail entry. new_value is a strict subset of old_value; an EMPTY
/// new_value signals a conflict.
struct PropagationDelta {
  VarId var;
  Interval old_value;
  Interval new_value;
  Cause cause;
};

/// Forward then backward contraction of one equation over `box`. Every
/// point solution of the equation inside the box survives. Variables that
/// do not change produce no delta. Processing stops at the first EMPTY.
[[nodiscard]] std::vector<PropagationDelta> propagate(const Equation& eq, const Box& box,
                                                      Cause cause = {});

}  // namespace nnicp
