#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "nnicp/rounding.hpp"

namespace nnicp {

/// Interval over the extended reals with independently strict or weak
/// bounds: {x | lo (<|<=) x (<|<=) hi}.
///
/// Values are canonical: infinite bounds are strict, and any bound pair
/// denoting the empty set collapses to the single EMPTY value. NaN bounds
/// are rejected at construction.
class Interval {
 public:
  /// The whole extended line minus the infinities, (-inf, +inf).
  constexpr Interval() = default;

  static Interval make(double lo, bool lo_strict, double hi, bool hi_strict);
  static Interval closed(double lo, double hi) { return make(lo, false, hi, false); }
  static Interval point(double v) { return make(v, false, v, false); }
  static Interval entire() { return Interval{}; }
  static Interval empty();

  [[nodiscard]] bool is_empty() const { return empty_; }
  [[nodiscard]] bool is_point() const { return !empty_ && lo_ == hi_; }
  [[nodiscard]] bool is_bounded() const { return !empty_ && lo_ > -kInf && hi_ < kInf; }
  [[nodiscard]] double lo() const { return lo_; }
  [[nodiscard]] double hi() const { return hi_; }
  [[nodiscard]] bool lo_strict() const { return lo_strict_; }
  [[nodiscard]] bool hi_strict() const { return hi_strict_; }

  [[nodiscard]] bool contains(double x) const;
  [[nodiscard]] bool is_subset_of(const Interval& other) const;

  friend bool operator==(const Interval&, const Interval&) = default;

 private:
  double lo_ = -kInf;
  double hi_ = kInf;
  bool lo_strict_ = true;
  bool hi_strict_ = true;
  bool empty_ = false;
};

[[nodiscard]] Interval intersect(const Interval& a, const Interval& b);
[[nodiscard]] Interval hull(const Interval& a, const Interval& b);

/// hi - lo rounded up; +inf when unbounded. Throws std::domain_error on EMPTY.
[[nodiscard]] double width(const Interval& a);

[[nodiscard]] Interval negate(const Interval& a);

// Outward-rounded arithmetic. Results carry weak bounds except at
// infinity; they are supersets of the exact set-valued results.
[[nodiscard]] Interval add(const Interval& a, const Interval& b);
[[nodiscard]] Interval scale(double c, const Interval& a);
[[nodiscard]] Interval multiply(const Interval& a, const Interval& b);
/// Hull of {y / x | y in num, x in den, x != 0}; the two branches of a
/// zero-straddling denominator are merged into their hull.
[[nodiscard]] Interval divide(const Interval& num, const Interval& den);

std::string to_string(const Interval& a);
std::ostream& operator<<(std::ostream& os, const Interval& a);

enum class VarId : std::uint32_t {};

[[nodiscard]] constexpr std::size_t index(VarId v) { return static_cast<std::size_t>(v); }
[[nodiscard]] constexpr VarId var_id(std::size_t i) { return static_cast<VarId>(i); }

/// Current search region: one interval per variable of a constraint system.
class Box {
 public:
  Box() = default;
  explicit Box(std::vector<Interval> intervals) : intervals_(std::move(intervals)) {}

  [[nodiscard]] std::size_t size() const { return intervals_.size(); }
  [[nodiscard]] const Interval& operator[](VarId v) const { return intervals_.at(index(v)); }
  Interval& operator[](VarId v) { return intervals_.at(index(v)); }
  [[nodiscard]] const std::vector<Interval>& intervals() const { return intervals_; }

  friend bool operator==(const Box&, const Box&) = default;

 private:
  std::vector<Interval> intervals_;
};

}  // namespace nnicp
