#include "nnicp/rounding.hpp"

#include <bit>
#include <stdexcept>

namespace nnicp {
namespace {

constexpr double kMax = std::numeric_limits<double>::max();
// Below this magnitude the error terms of fma/TwoSum may themselves be
// inexact, so results are stepped outward unconditionally.
constexpr double kTiny = 0x1p-960;

// Rounds the correctly rounded value `r` of an exact quantity r + err
// in direction `dir`, where only the sign of err is needed.
double settle(double r, double err_sign, RoundDir dir) {
  if (dir == RoundDir::down) return err_sign < 0 ? next_down(r) : r;
  return err_sign > 0 ? next_up(r) : r;
}

double overflowed(double r, RoundDir dir) {
  // r is +-inf produced from finite operands.
  if (r > 0) return dir == RoundDir::down ? kMax : kInf;
  return dir == RoundDir::up ? -kMax : -kInf;
}

double add_dir(double a, double b, RoundDir dir) {
  const double s = a + b;
  if (std::isnan(s)) throw std::domain_error("inf - inf in bound arithmetic");
  if (std::isinf(a) || std::isinf(b)) return s;
  if (std::isinf(s)) return overflowed(s, dir);
  const double bb = s - a;
  const double err = (a - (s - bb)) + (b - bb);
  return settle(s, err, dir);
}

double mul_dir(double a, double b, RoundDir dir) {
  if (std::isnan(a) || std::isnan(b)) throw std::domain_error("NaN in bound arithmetic");
  if (a == 0.0 || b == 0.0) return 0.0;
  const double p = a * b;
  if (std::isinf(a) || std::isinf(b)) return p;
  if (std::isinf(p)) return overflowed(p, dir);
  if (std::fabs(p) < kTiny) return round_out(p, dir);
  return settle(p, std::fma(a, b, -p), dir);
}

double div_dir(double a, double b, RoundDir dir) {
  if (std::isnan(a) || std::isnan(b)) throw std::domain_error("NaN in bound arithmetic");
  if (b == 0.0) throw std::domain_error("division by zero in bound arithmetic");
  if (std::isinf(a) && std::isinf(b)) throw std::domain_error("inf / inf in bound arithmetic");
  if (std::isinf(b)) return 0.0;
  const double q = a / b;
  if (std::isinf(a)) return q;
  if (a == 0.0) return 0.0;
  if (std::isinf(q)) return overflowed(q, dir);
  if (std::fabs(q) < kTiny || std::fabs(a) < kTiny) return round_out(q, dir);
  // a = q*b + r exactly; the true quotient is q + r/b.
  const double r = std::fma(-q, b, a);
  const double sign = (r == 0.0) ? 0.0 : ((r > 0) == (b > 0) ? 1.0 : -1.0);
  return settle(q, sign, dir);
}

}  // namespace

double round_out(double x, RoundDir dir) {
  if (std::isnan(x)) throw std::domain_error("round_out: NaN");
  if (std::isinf(x)) return x;
  return dir == RoundDir::down ? next_down(x) : next_up(x);
}

double add_down(double a, double b) { return add_dir(a, b, RoundDir::down); }
double add_up(double a, double b) { return add_dir(a, b, RoundDir::up); }
double sub_down(double a, double b) { return add_dir(a, -b, RoundDir::down); }
double sub_up(double a, double b) { return add_dir(a, -b, RoundDir::up); }
double mul_down(double a, double b) { return mul_dir(a, b, RoundDir::down); }
double mul_up(double a, double b) { return mul_dir(a, b, RoundDir::up); }
double div_down(double a, double b) { return div_dir(a, b, RoundDir::down); }
double div_up(double a, double b) { return div_dir(a, b, RoundDir::up); }

double exp_down(double x) {
  if (std::isnan(x)) throw std::domain_error("exp: NaN");
  if (x == -kInf) return 0.0;
  if (x == kInf) return kInf;
  const auto v = static_cast<double>(std::exp(static_cast<long double>(x)));
  if (std::isinf(v)) return kMax;
  return std::fmax(0.0, round_out(v, RoundDir::down));
}

double exp_up(double x) {
  if (std::isnan(x)) throw std::domain_error("exp: NaN");
  if (x == -kInf) return 0.0;
  if (x == kInf) return kInf;
  const auto v = static_cast<double>(std::exp(static_cast<long double>(x)));
  return round_out(v, RoundDir::up);
}

double log_down(double x) {
  if (std::isnan(x)) throw std::domain_error("log: NaN");
  if (x <= 0.0) return -kInf;
  if (x == kInf) return kInf;
  return round_out(static_cast<double>(std::log(static_cast<long double>(x))), RoundDir::down);
}

double log_up(double x) {
  if (std::isnan(x)) throw std::domain_error("log: NaN");
  if (x <= 0.0) return -kInf;
  if (x == kInf) return kInf;
  return round_out(static_cast<double>(std::log(static_cast<long double>(x))), RoundDir::up);
}

std::uint64_t ulp_distance(double a, double b) {
  if (std::isnan(a) || std::isnan(b)) throw std::domain_error("ulp_distance: NaN");
  auto ordered = [](double x) -> std::int64_t {
    const auto bits = std::bit_cast<std::int64_t>(x);
    return bits < 0 ? std::numeric_limits<std::int64_t>::min() - bits : bits;
  };
  const std::int64_t ia = ordered(a);
  const std::int64_t ib = ordered(b);
  return ia > ib ? static_cast<std::uint64_t>(ia) - static_cast<std::uint64_t>(ib)
                 : static_cast<std::uint64_t>(ib) - static_cast<std::uint64_t>(ia);
}

}  // namespace nnicp
