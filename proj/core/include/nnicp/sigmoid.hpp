#pragma once

#include "nnicp/interval.hpp"

namespace nnicp {

/// Sigmoid lifted to the extended reals: 0 at -inf, 1 at +inf,
/// 1 / (1 + e^-x) otherwise. Finite arguments are evaluated in extended
/// precision and rounded to nearest, so the result is within one ULP;
/// callers apply round_out. Throws std::domain_error on NaN.
[[nodiscard]] double sigma(double x);

/// Lifted inverse: -inf for y <= 0, +inf for y >= 1, ln(y / (1 - y))
/// otherwise. Same accuracy contract as sigma.
[[nodiscard]] double sigma_inv(double y);

// Outward-rounded sigma bounds, clamped to [0, 1].
[[nodiscard]] double sigma_down(double x);
[[nodiscard]] double sigma_up(double x);

/// Image of X under sigmoid, outward rounded. A bound is strict when the
/// X bound is strict or infinite (0 and 1 are never attained).
[[nodiscard]] Interval sigmoid_image(const Interval& x);

/// Preimage of Y under sigmoid, outward rounded.
[[nodiscard]] Interval sigmoid_preimage(const Interval& y);

/// Forward contraction of y = sig(x): returns Y ∩ sigmoid_image(X).
[[nodiscard]] Interval fwd_prop_sigmoid(const Interval& x, const Interval& y);

/// Backward contraction of y = sig(x): returns X ∩ sigmoid_preimage(Y).
[[nodiscard]] Interval bwd_prop_sigmoid(const Interval& x, const Interval& y);

}  // namespace nnicp
