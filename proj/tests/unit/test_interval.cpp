#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "mp_oracle.hpp"
#include "nnicp/interval.hpp"

using namespace nnicp;

namespace {

Interval random_interval(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> small(-4, 4);
  std::uniform_int_distribution<int> coin(0, 5);
  double lo = small(rng) * 0.5;
  double hi = small(rng) * 0.5;
  if (lo > hi) std::swap(lo, hi);
  if (coin(rng) == 0) lo = -kInf;
  if (coin(rng) == 0) hi = kInf;
  return Interval::make(lo, coin(rng) < 3, hi, coin(rng) < 3);
}

}  // namespace

TEST(Interval, Canonicalization) {
  const Interval a = Interval::make(-kInf, false, kInf, false);
  EXPECT_TRUE(a.lo_strict());
  EXPECT_TRUE(a.hi_strict());
  EXPECT_EQ(a, Interval::entire());
  EXPECT_TRUE(Interval::make(1, true, 1, false).is_empty());
  EXPECT_TRUE(Interval::make(2, false, 1, false).is_empty());
  EXPECT_EQ(Interval::make(2, false, 1, false), Interval::empty());
  EXPECT_TRUE(Interval::point(3).is_point());
  EXPECT_THROW((void)Interval::make(std::nan(""), false, 1, false), std::domain_error);
}

TEST(Intersect, Examples) {
  EXPECT_EQ(intersect(Interval::closed(0, 1), Interval::closed(0.5, 2)), Interval::closed(0.5, 1));
  EXPECT_TRUE(intersect(Interval::make(0, false, 1, true), Interval::closed(1, 2)).is_empty());
  EXPECT_EQ(intersect(Interval::make(-kInf, true, 8, true), Interval::make(-8, false, -7.5, true)),
            Interval::make(-8, false, -7.5, true));
}

TEST(Intersect, StrictWinsOnEqualBounds) {
  const Interval r = intersect(Interval::make(0, true, 1, false), Interval::make(0, false, 1, true));
  EXPECT_EQ(r, Interval::make(0, true, 1, true));
}

TEST(Intersect, AlgebraicLaws) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 5000; ++i) {
    const Interval a = random_interval(rng), b = random_interval(rng), c = random_interval(rng);
    EXPECT_EQ(intersect(a, b), intersect(b, a));
    EXPECT_EQ(intersect(intersect(a, b), c), intersect(a, intersect(b, c)));
    EXPECT_EQ(intersect(a, a), a);
    const Interval ab = intersect(a, b);
    EXPECT_TRUE(ab.is_subset_of(a));
    EXPECT_TRUE(ab.is_subset_of(b));
  }
}

TEST(Intersect, MembershipIsConjunction) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 2000; ++i) {
    const Interval a = random_interval(rng), b = random_interval(rng);
    const Interval ab = intersect(a, b);
    for (int k = -10; k <= 10; ++k) {
      const double r = k * 0.25;
      EXPECT_EQ(a.contains(r) && b.contains(r), ab.contains(r)) << a << " " << b << " " << r;
    }
  }
}

TEST(Width, Examples) {
  EXPECT_EQ(width(Interval::closed(0, 1)), 1.0);
  EXPECT_EQ(width(Interval::point(0.5)), 0.0);
  EXPECT_EQ(width(Interval::make(-kInf, true, 3, false)), kInf);
  EXPECT_THROW((void)width(Interval::empty()), std::domain_error);
  EXPECT_GE(width(Interval::closed(-0.1, 0.2)), 0.30000000000000004);
}

TEST(Hull, CoversBoth) {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 2000; ++i) {
    const Interval a = random_interval(rng), b = random_interval(rng);
    const Interval h = hull(a, b);
    EXPECT_TRUE(a.is_subset_of(h));
    EXPECT_TRUE(b.is_subset_of(h));
  }
  EXPECT_EQ(hull(Interval::empty(), Interval::closed(1, 2)), Interval::closed(1, 2));
}

TEST(Arithmetic, EnclosesPointwiseResults) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    Interval a = random_interval(rng), b = random_interval(rng);
    if (a.is_empty() || b.is_empty() || !a.is_bounded() || !b.is_bounded()) continue;
    const double x = a.lo() + (a.hi() - a.lo()) * u(rng);
    const double y = b.lo() + (b.hi() - b.lo()) * u(rng);
    if (!a.contains(x) || !b.contains(y)) continue;
    using ref::Mp;
    EXPECT_TRUE(ref::mp_contains(add(a, b), Mp(x) + Mp(y)));
    EXPECT_TRUE(ref::mp_contains(multiply(a, b), Mp(x) * Mp(y)));
    EXPECT_TRUE(ref::mp_contains(scale(-1.7, a), Mp(-1.7) * Mp(x)));
    EXPECT_TRUE(ref::mp_contains(negate(a), -Mp(x)));
    if (y != 0) EXPECT_TRUE(ref::mp_contains(divide(a, b), Mp(x) / Mp(y)));
  }
}

TEST(Divide, ZeroStraddlingDenominator) {
  // 1 / [-1, 2] = (-inf, -1] u [0.5, +inf): the hull is the whole line.
  EXPECT_EQ(divide(Interval::point(1), Interval::closed(-1, 2)), Interval::entire());
  EXPECT_EQ(divide(Interval::point(1), Interval::closed(1, 2)), Interval::closed(0.5, 1));
  EXPECT_EQ(divide(Interval::closed(-1, 1), Interval::closed(-1, 1)), Interval::entire());
  EXPECT_TRUE(divide(Interval::point(1), Interval::point(0)).is_empty());
}

TEST(Printing, Format) {
  EXPECT_EQ(to_string(Interval::make(0, false, 1, true)), "[0, 1)");
  EXPECT_EQ(to_string(Interval::entire()), "(-inf, +inf)");
  EXPECT_EQ(to_string(Interval::empty()), "EMPTY");
  std::ostringstream os;
  os << Interval::closed(0.1, 0.25);
  EXPECT_EQ(os.str(), "[0.1, 0.25]");
}
