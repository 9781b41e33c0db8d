#include "nnicp/sigmoid.hpp"

#include <algorithm>
#include <stdexcept>

namespace nnicp {

double sigma(double x) {
  if (std::isnan(x)) throw std::domain_error("sigma: NaN");
  if (x == -kInf) return 0.0;
  if (x == kInf) return 1.0;
  const long double e = std::exp(-static_cast<long double>(x));
  return static_cast<double>(1.0L / (1.0L + e));
}

double sigma_inv(double y) {
  if (std::isnan(y)) throw std::domain_error("sigma_inv: NaN");
  if (y <= 0.0) return -kInf;
  if (y >= 1.0) return kInf;
  const auto ly = static_cast<long double>(y);
  // Near 1/2 the two logs cancel; log(y / (1 - y)) = log1p((2y - 1) / (1 - y))
  // keeps full relative accuracy there.
  if (y >= 0.25 && y <= 0.75) return static_cast<double>(std::log1p((2.0L * ly - 1.0L) / (1.0L - ly)));
  return static_cast<double>(std::log(ly) - std::log1p(-ly));
}

double sigma_down(double x) {
  if (x == -kInf || x == kInf) return sigma(x);
  return std::clamp(round_out(sigma(x), RoundDir::down), 0.0, 1.0);
}

double sigma_up(double x) {
  if (x == -kInf || x == kInf) return sigma(x);
  return std::clamp(round_out(sigma(x), RoundDir::up), 0.0, 1.0);
}

Interval sigmoid_image(const Interval& x) {
  if (x.is_empty()) return x;
  const bool lo_strict = x.lo_strict() || x.lo() == -kInf;
  const bool hi_strict = x.hi_strict() || x.hi() == kInf;
  return Interval::make(sigma_down(x.lo()), lo_strict, sigma_up(x.hi()), hi_strict);
}

Interval sigmoid_preimage(const Interval& y) {
  if (y.is_empty()) return y;
  const double inv_lo = sigma_inv(y.lo());
  const double inv_hi = sigma_inv(y.hi());
  // Infinite results are canonically strict inside Interval::make.
  const double lo = std::isinf(inv_lo) ? inv_lo : round_out(inv_lo, RoundDir::down);
  const double hi = std::isinf(inv_hi) ? inv_hi : round_out(inv_hi, RoundDir::up);
  return Interval::make(lo, y.lo_strict(), hi, y.hi_strict());
}

Interval fwd_prop_sigmoid(const Interval& x, const Interval& y) {
  return intersect(y, sigmoid_image(x));
}

Interval bwd_prop_sigmoid(const Interval& x, const Interval& y) {
  return intersect(x, sigmoid_preimage(y));
}

}  // namespace nnicp
