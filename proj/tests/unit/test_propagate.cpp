#include <gtest/gtest.h>

#include <random>

#include "mp_oracle.hpp"
#include "nnicp/propagate.hpp"
#include "nnicp/sigmoid.hpp"

using namespace nnicp;
using ref::Mp;

namespace {

Box apply(const Equation& eq, Box box) {
  for (const auto& d : propagate(eq, box)) box[d.var] = d.new_value;
  return box;
}

const VarId v0 = var_id(0), v1 = var_id(1), v2 = var_id(2);

}  // namespace

TEST(Propagate, ExpPoint) {
  const Box out = apply(ExpEq{v1, v0}, Box({Interval::point(0), Interval::entire()}));
  EXPECT_TRUE(out[v1].contains(1.0));
  EXPECT_LE(ulp_distance(out[v1].lo(), 1.0), 1u);
  EXPECT_LE(ulp_distance(out[v1].hi(), 1.0), 1u);
}

TEST(Propagate, ExpBackward) {
  const Box out = apply(ExpEq{v1, v0}, Box({Interval::entire(), Interval::closed(-1, 1)}));
  EXPECT_EQ(out[v0].lo(), -kInf);
  EXPECT_GE(out[v0].hi(), 0.0);
  EXPECT_LE(out[v0].hi(), 1e-300);
  EXPECT_TRUE(out[v1].lo_strict());
  EXPECT_EQ(out[v1].lo(), 0.0);
}

TEST(Propagate, NegReflects) {
  const Box out = apply(NegEq{v1, v0}, Box({Interval::make(1, true, 2, false), Interval::entire()}));
  EXPECT_EQ(out[v1], Interval::make(-2, false, -1, true));
}

TEST(Propagate, AffineSumForward) {
  const AffineSumEq eq{v2, {{0.5, v0}, {0.5, v1}}, 0.0};
  const Box out = apply(eq, Box({Interval::closed(0, 1), Interval::closed(0, 1), Interval::entire()}));
  EXPECT_EQ(out[v2], Interval::closed(0, 1));
}

TEST(Propagate, AffineSumBackwardSolvesEachTerm) {
  // y = x0 + 2 x1 - 1, y in [0, 1], x1 in [0, 0.25] -> x0 in [0.5, 2]
  const AffineSumEq eq{v2, {{1.0, v0}, {2.0, v1}}, -1.0};
  const Box out = apply(eq, Box({Interval::entire(), Interval::closed(0, 0.25), Interval::closed(0, 1)}));
  EXPECT_EQ(out[v0], Interval::closed(0.5, 2));
}

TEST(Propagate, AffineSumWithUnboundedTerm) {
  // y = x0 + x1 with x0 unbounded: x1 still contracts through y and x0's finite side.
  const AffineSumEq eq{v2, {{1.0, v0}, {1.0, v1}}, 0.0};
  const Box out = apply(eq, Box({Interval::make(0, false, kInf, true), Interval::entire(), Interval::closed(0, 1)}));
  EXPECT_EQ(out[v1].hi(), 1.0);
  EXPECT_EQ(out[v1].lo(), -kInf);
  EXPECT_EQ(out[v0], Interval::make(0, false, kInf, true));
}

TEST(Propagate, ProductBackward) {
  const Box out = apply(ProductEq{v2, v0, v1}, Box({Interval::closed(1, 2), Interval::entire(), Interval::point(1)}));
  EXPECT_EQ(out[v1], Interval::closed(0.5, 1));
}

TEST(Propagate, ProductBackwardStaysAboveGridSolutions) {
  const Box box({Interval::closed(1, 2), Interval::entire(), Interval::point(1)});
  const Box out = apply(ProductEq{v2, v0, v1}, box);
  for (int i = 0; i <= 1000; ++i) {
    const double x1 = 1 + i / 1000.0;
    EXPECT_TRUE(ref::mp_contains(out[v1], Mp(1) / Mp(x1)));
  }
}

TEST(Propagate, ConflictStopsAtEmpty) {
  const auto deltas = propagate(SigmoidEq{v1, v0}, Box({Interval::entire(), Interval::closed(-1, 0)}));
  ASSERT_FALSE(deltas.empty());
  EXPECT_TRUE(deltas.back().new_value.is_empty());
}

TEST(Propagate, DeltasAreStrictContractions) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> d(-4, 4);
  for (int i = 0; i < 3000; ++i) {
    std::vector<Interval> iv;
    for (int k = 0; k < 3; ++k) {
      double a = d(rng), b = d(rng);
      if (a > b) std::swap(a, b);
      iv.push_back(Interval::closed(a, b));
    }
    const Box box(iv);
    const Equation eqs[] = {SigmoidEq{v1, v0}, ExpEq{v1, v0}, NegEq{v1, v0}, ProductEq{v2, v0, v1},
                            AffineSumEq{v2, {{1.5, v0}, {-0.25, v1}}, 0.5}};
    for (const auto& eq : eqs) {
      Box cur = box;
      for (const auto& delta : propagate(eq, box)) {
        EXPECT_EQ(delta.old_value, cur[delta.var]);
        EXPECT_TRUE(delta.new_value.is_subset_of(delta.old_value));
        EXPECT_NE(delta.new_value, delta.old_value);
        cur[delta.var] = delta.new_value;
      }
    }
  }
}

TEST(Propagate, SoundOnRandomSolutions) {
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> d(-3, 3);
  std::uniform_real_distribution<double> w(0, 1);
  auto around = [&](double c) { return Interval::closed(c - w(rng), c + w(rng)); };
  for (int i = 0; i < 5000; ++i) {
    const double a = d(rng), b = d(rng);
    // Exact values of each equation at (a, b), held in high precision and
    // enclosed in the box via outward rounding of the centre.
    struct Case {
      Equation eq;
      Mp y;
    };
    const Case cases[] = {
        {ExpEq{v2, v0}, ref::mp_exp(Mp(a))},
        {NegEq{v2, v0}, -Mp(a)},
        {ProductEq{v2, v0, v1}, Mp(a) * Mp(b)},
        {AffineSumEq{v2, {{0.3, v0}, {-1.7, v1}}, 0.1}, Mp(0.3) * Mp(a) - Mp(1.7) * Mp(b) + Mp(0.1)},
        {SigmoidEq{v2, v0}, ref::mp_sigma(Mp(a))},
    };
    for (const auto& c : cases) {
      const double yd = static_cast<double>(c.y);
      Interval y = around(yd);
      y = Interval::closed(std::min(y.lo(), ref::mp_down(c.y)), std::max(y.hi(), ref::mp_up(c.y)));
      const Box out = apply(c.eq, Box({around(a), around(b), y}));
      EXPECT_TRUE(out[v0].contains(a));
      EXPECT_TRUE(out[v1].contains(b));
      EXPECT_TRUE(ref::mp_contains(out[v2], c.y));
    }
  }
}
