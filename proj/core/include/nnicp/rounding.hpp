#pragma once

// Directed rounding of binary64 arithmetic without touching the FPU
// rounding mode. Sums, products and quotients are rounded exactly in the
// requested direction using error-free transforms; transcendental values
// are widened by one ULP after a library evaluation.

#include <cmath>
#include <cstdint>
#include <limits>

namespace nnicp {

enum class RoundDir { down, up };

inline constexpr double kInf = std::numeric_limits<double>::infinity();

[[nodiscard]] inline double next_down(double x) { return std::nextafter(x, -kInf); }
[[nodiscard]] inline double next_up(double x) { return std::nextafter(x, kInf); }

/// One-ULP step in the given direction. Infinities are fixed points.
/// Throws std::domain_error on NaN.
[[nodiscard]] double round_out(double x, RoundDir dir);

[[nodiscard]] double add_down(double a, double b);
[[nodiscard]] double add_up(double a, double b);
[[nodiscard]] double sub_down(double a, double b);
[[nodiscard]] double sub_up(double a, double b);
// 0 * inf is taken as 0: a zero factor comes from an attained bound.
[[nodiscard]] double mul_down(double a, double b);
[[nodiscard]] double mul_up(double a, double b);
// b != 0. finite / inf is 0.
[[nodiscard]] double div_down(double a, double b);
[[nodiscard]] double div_up(double a, double b);

// exp and ln bounds. Evaluated in extended precision, rounded to nearest,
// then widened by one ULP. exp bounds are clamped to >= 0; log of a
// nonpositive argument is -inf.
[[nodiscard]] double exp_down(double x);
[[nodiscard]] double exp_up(double x);
[[nodiscard]] double log_down(double x);
[[nodiscard]] double log_up(double x);

/// Distance in representable doubles between a and b (0 when equal).
[[nodiscard]] std::uint64_t ulp_distance(double a, double b);

}  // namespace nnicp
