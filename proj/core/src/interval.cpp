#include "nnicp/interval.hpp"

#include <algorithm>
#include <charconv>
#include <ostream>
#include <stdexcept>

namespace nnicp {
namespace {

// Quotient bound with the conventions needed by relational division:
// nonzero / 0 is an infinity of the numerator's sign, finite / inf is 0.
double quotient(double num, double den, RoundDir dir) {
  if (den == 0.0) {
    if (num == 0.0) return 0.0;
    return num > 0 ? kInf : -kInf;
  }
  return dir == RoundDir::down ? div_down(num, den) : div_up(num, den);
}

// {y / x | y in num, x in den} for den a subset of [0, +inf) with hi > 0
// and 0 not a member.
Interval divide_by_positive(const Interval& num, const Interval& den) {
  const double dl = den.lo();
  const double dh = den.hi();
  double lo = 0;
  double hi = 0;
  if (num.lo() >= 0) {
    lo = quotient(num.lo(), dh, RoundDir::down);
    hi = quotient(num.hi(), dl, RoundDir::up);
  } else if (num.hi() <= 0) {
    lo = quotient(num.lo(), dl, RoundDir::down);
    hi = quotient(num.hi(), dh, RoundDir::up);
  } else {
    lo = quotient(num.lo(), dl, RoundDir::down);
    hi = quotient(num.hi(), dl, RoundDir::up);
  }
  return Interval::closed(lo, hi);
}

void append_bound(std::string& out, double v) {
  if (v == kInf) {
    out += "+inf";
  } else if (v == -kInf) {
    out += "-inf";
  } else {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    out.append(buf, res.ptr);
  }
}

}  // namespace

Interval Interval::make(double lo, bool lo_strict, double hi, bool hi_strict) {
  if (std::isnan(lo) || std::isnan(hi)) throw std::domain_error("interval bound is NaN");
  if (lo == -kInf) lo_strict = true;
  if (hi == kInf) hi_strict = true;
  if (lo == kInf || hi == -kInf || lo > hi || (lo == hi && (lo_strict || hi_strict))) return empty();
  Interval r;
  r.lo_ = lo;
  r.hi_ = hi;
  r.lo_strict_ = lo_strict;
  r.hi_strict_ = hi_strict;
  r.empty_ = false;
  return r;
}

Interval Interval::empty() {
  Interval r;
  r.lo_ = kInf;
  r.hi_ = -kInf;
  r.lo_strict_ = true;
  r.hi_strict_ = true;
  r.empty_ = true;
  return r;
}

bool Interval::contains(double x) const {
  if (empty_ || std::isnan(x)) return false;
  const bool above = lo_strict_ ? x > lo_ : x >= lo_;
  const bool below = hi_strict_ ? x < hi_ : x <= hi_;
  return above && below;
}

bool Interval::is_subset_of(const Interval& other) const {
  if (empty_) return true;
  if (other.empty_) return false;
  const bool lo_ok = lo_ > other.lo_ || (lo_ == other.lo_ && (lo_strict_ || !other.lo_strict_));
  const bool hi_ok = hi_ < other.hi_ || (hi_ == other.hi_ && (hi_strict_ || !other.hi_strict_));
  return lo_ok && hi_ok;
}

Interval intersect(const Interval& a, const Interval& b) {
  if (a.is_empty() || b.is_empty()) return Interval::empty();
  double lo = a.lo();
  bool lo_strict = a.lo_strict();
  if (b.lo() > lo) {
    lo = b.lo();
    lo_strict = b.lo_strict();
  } else if (b.lo() == lo) {
    lo_strict = lo_strict || b.lo_strict();
  }
  double hi = a.hi();
  bool hi_strict = a.hi_strict();
  if (b.hi() < hi) {
    hi = b.hi();
    hi_strict = b.hi_strict();
  } else if (b.hi() == hi) {
    hi_strict = hi_strict || b.hi_strict();
  }
  return Interval::make(lo, lo_strict, hi, hi_strict);
}

Interval hull(const Interval& a, const Interval& b) {
  if (a.is_empty()) return b;
  if (b.is_empty()) return a;
  double lo = a.lo();
  bool lo_strict = a.lo_strict();
  if (b.lo() < lo) {
    lo = b.lo();
    lo_strict = b.lo_strict();
  } else if (b.lo() == lo) {
    lo_strict = lo_strict && b.lo_strict();
  }
  double hi = a.hi();
  bool hi_strict = a.hi_strict();
  if (b.hi() > hi) {
    hi = b.hi();
    hi_strict = b.hi_strict();
  } else if (b.hi() == hi) {
    hi_strict = hi_strict && b.hi_strict();
  }
  return Interval::make(lo, lo_strict, hi, hi_strict);
}

double width(const Interval& a) {
  if (a.is_empty()) throw std::domain_error("width of EMPTY interval");
  if (!a.is_bounded()) return kInf;
  return sub_up(a.hi(), a.lo());
}

Interval negate(const Interval& a) {
  if (a.is_empty()) return a;
  return Interval::make(-a.hi(), a.hi_strict(), -a.lo(), a.lo_strict());
}

Interval add(const Interval& a, const Interval& b) {
  if (a.is_empty() || b.is_empty()) return Interval::empty();
  return Interval::closed(add_down(a.lo(), b.lo()), add_up(a.hi(), b.hi()));
}

Interval scale(double c, const Interval& a) {
  if (a.is_empty()) return a;
  if (c == 0.0) return Interval::point(0.0);
  if (c > 0) return Interval::make(mul_down(c, a.lo()), a.lo_strict(), mul_up(c, a.hi()), a.hi_strict());
  return Interval::make(mul_down(c, a.hi()), a.hi_strict(), mul_up(c, a.lo()), a.lo_strict());
}

Interval multiply(const Interval& a, const Interval& b) {
  if (a.is_empty() || b.is_empty()) return Interval::empty();
  const double as[2] = {a.lo(), a.hi()};
  const double bs[2] = {b.lo(), b.hi()};
  double lo = kInf;
  double hi = -kInf;
  for (double x : as) {
    for (double y : bs) {
      lo = std::min(lo, mul_down(x, y));
      hi = std::max(hi, mul_up(x, y));
    }
  }
  return Interval::closed(lo, hi);
}

Interval divide(const Interval& num, const Interval& den) {
  if (num.is_empty() || den.is_empty()) return Interval::empty();
  if (num.contains(0.0) && den.contains(0.0)) return Interval::entire();
  Interval result = Interval::empty();
  const Interval pos = intersect(den, Interval::make(0.0, true, kInf, true));
  if (!pos.is_empty()) result = hull(result, divide_by_positive(num, pos));
  const Interval neg = intersect(den, Interval::make(-kInf, true, 0.0, true));
  if (!neg.is_empty()) result = hull(result, divide_by_positive(negate(num), negate(neg)));
  return result;
}

std::string to_string(const Interval& a) {
  if (a.is_empty()) return "EMPTY";
  std::string out;
  out += a.lo_strict() ? '(' : '[';
  append_bound(out, a.lo());
  out += ", ";
  append_bound(out, a.hi());
  out += a.hi_strict() ? ')' : ']';
  return out;
}

std::ostream& operator<<(std::ostream& os, const Interval& a) { return os << to_string(a); }

}  // namespace nnicp
