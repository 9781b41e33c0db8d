#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>

#include "nnicp/etcs.hpp"
#include "nnicp/mnist.hpp"
#include "nnicp/oracle.hpp"
#include "nnicp/random_instance.hpp"
#include "nnicp/solver.hpp"

using namespace nnicp;

namespace {

Network dense(std::size_t in, std::size_t out, double w, double b, Activation act = Activation::linear) {
  Network net;
  net.input_dim = in;
  net.layers.push_back({std::vector<std::vector<double>>(out, std::vector<double>(in, w)),
                        std::vector<double>(out, b), act});
  return net;
}

// out0 = 0, out1 = 1: the network always advises braking.
Network always_brake() {
  Network net = dense(3, 2, 0.0, 0.0);
  net.layers[0].biases = {0.0, 1.0};
  return net;
}

Network never_brake() {
  Network net = dense(3, 2, 0.0, 0.0);
  net.layers[0].biases = {1.0, 0.0};
  return net;
}

std::vector<BoundAtom> bounds_on(const ConstraintSystem& sys, VarId v) {
  std::vector<BoundAtom> out;
  for (const auto& b : sys.bounds())
    if (b.var == v) out.push_back(b);
  return out;
}

}  // namespace

TEST(EtcsGroundTruth, Examples) {
  const auto c = etcs_assess(25, 15000, 35000);
  EXPECT_EQ(c.braking_distance, 19600.0);
  EXPECT_EQ(c.required_deceleration, -625.0 / 39200.0);
  EXPECT_NEAR(c.required_deceleration, -0.01594, 1e-5);
  EXPECT_FALSE(c.braking);
  EXPECT_FALSE(etcs_ground_truth(0, 100, 5000));
  EXPECT_EQ(etcs_assess(0, 100, 5000).required_deceleration, 0.0);
  const auto d = etcs_assess(25, 0, 500);
  EXPECT_EQ(d.braking_distance, 100.0);
  EXPECT_EQ(d.required_deceleration, -3.125);
  EXPECT_TRUE(d.braking);
}

TEST(EtcsGroundTruth, Boundary) {
  EXPECT_TRUE(etcs_ground_truth(1, 0, 400));
  EXPECT_FALSE(etcs_ground_truth(0, 0, 400));
  EXPECT_THROW((void)etcs_ground_truth(1, 0, 399), std::invalid_argument);
}

TEST(EtcsParams, Validation) {
  EtcsParams p;
  EXPECT_NO_THROW(p.validate());
  p.max_deceleration = 0.1;
  EXPECT_THROW(p.validate(), std::invalid_argument);
}

TEST(EtcsScenario, GlobalRangesAndProperty) {
  const auto sys = build_etcs_scenario(EtcsScenario::A, dense(3, 2, 0.1, 0.0));
  EXPECT_EQ(sys.var(sys.lookup("in0")).initial, Interval::closed(0, 83.4));
  EXPECT_EQ(sys.var(sys.lookup("in1")).initial, Interval::closed(0, 50000));
  EXPECT_EQ(sys.var(sys.lookup("in2")).initial, Interval::closed(0, 50000));
  ASSERT_EQ(sys.bounds().size(), 1u);
  EXPECT_EQ(sys.bounds()[0], (BoundAtom{sys.lookup("margin"), Relation::gt, 0}));
  const auto& eq = std::get<AffineSumEq>(sys.equations().back());
  EXPECT_EQ(eq.y, sys.lookup("margin"));
  EXPECT_EQ(eq.terms, (std::vector<AffineTerm>{{1.0, sys.lookup("out0")}, {-1.0, sys.lookup("out1")}}));
}

TEST(EtcsScenario, StructureIsExactlyNetworkPlusAtoms) {
  const Network net = dense(3, 2, 0.1, 0.0, Activation::sigmoid);
  const auto base = encode_network(net).system;
  struct Expect {
    EtcsScenario s;
    std::size_t atoms;
    std::size_t extra_eqs;
  };
  for (const Expect e : {Expect{EtcsScenario::A, 1, 1}, Expect{EtcsScenario::B, 2, 2}, Expect{EtcsScenario::C, 6, 1},
                         Expect{EtcsScenario::D, 4, 1}, Expect{EtcsScenario::severe, 5, 2}}) {
    const auto sys = build_etcs_scenario(e.s, net);
    EXPECT_EQ(sys.bounds().size(), e.atoms) << to_string(e.s);
    EXPECT_EQ(sys.equations().size(), base.equations().size() + e.extra_eqs);
    EXPECT_TRUE(std::equal(base.equations().begin(), base.equations().end(), sys.equations().begin()));
    EXPECT_EQ(sys.clauses(), base.clauses());
  }
  const auto c = build_etcs_scenario(EtcsScenario::C, net);
  EXPECT_EQ(bounds_on(c, c.lookup("in0")), (std::vector<BoundAtom>{{c.lookup("in0"), Relation::gt, 25}}));
  EXPECT_EQ(bounds_on(c, c.lookup("in1")),
            (std::vector<BoundAtom>{{c.lookup("in1"), Relation::ge, 15000}, {c.lookup("in1"), Relation::le, 15000}}));
  EXPECT_EQ(bounds_on(c, c.lookup("in2")),
            (std::vector<BoundAtom>{{c.lookup("in2"), Relation::ge, 35000}, {c.lookup("in2"), Relation::le, 35000}}));
  const auto d = build_etcs_scenario(EtcsScenario::D, net);
  EXPECT_EQ(bounds_on(d, d.lookup("in1")), (std::vector<BoundAtom>{{d.lookup("in1"), Relation::lt, 800}}));
  EXPECT_EQ(bounds_on(d, d.lookup("in2")), (std::vector<BoundAtom>{{d.lookup("in2"), Relation::lt, 800}}));
  const auto s = build_etcs_scenario(EtcsScenario::severe, net);
  EXPECT_EQ(bounds_on(s, s.lookup("in0")),
            (std::vector<BoundAtom>{{s.lookup("in0"), Relation::gt, 20}, {s.lookup("in0"), Relation::le, 80}}));
  EXPECT_EQ(bounds_on(s, s.lookup("gap")),
            (std::vector<BoundAtom>{{s.lookup("gap"), Relation::ge, 0}, {s.lookup("gap"), Relation::le, 400}}));
  const auto& gap = std::get<AffineSumEq>(s.equations()[s.equations().size() - 2]);
  EXPECT_EQ(gap.terms, (std::vector<AffineTerm>{{1.0, s.lookup("in2")}, {-1.0, s.lookup("in1")}}));
}

TEST(EtcsScenario, ArityErrors) {
  EXPECT_THROW((void)build_etcs_scenario(EtcsScenario::A, dense(2, 2, 1, 0)), std::invalid_argument);
  EXPECT_THROW((void)build_etcs_scenario(EtcsScenario::A, dense(3, 3, 1, 0)), std::invalid_argument);
  EXPECT_THROW((void)parse_etcs_scenario("E"), std::invalid_argument);
}

TEST(EtcsScenario, StubVerdicts) {
  for (EtcsScenario s : {EtcsScenario::A, EtcsScenario::B, EtcsScenario::C, EtcsScenario::D, EtcsScenario::severe}) {
    EXPECT_EQ(solve(build_etcs_scenario(s, always_brake())).outcome, Outcome::unsat) << to_string(s);
    const auto bad = build_etcs_scenario(s, never_brake());
    EXPECT_EQ(solve(bad).outcome, Outcome::candidate) << to_string(s);
    // The severe window is 400 m wide on a 50 km track: it needs a grid
    // finer than the window to be hit.
    const std::size_t points = s == EtcsScenario::severe ? 251 : 20;
    EXPECT_TRUE(brute_force_oracle(bad, points)) << to_string(s);
  }
}

TEST(EtcsScenario, OracleAndSolverNeverContradict) {
  // One sigmoid neuron per output with weights that roughly track the
  // braking rule; the oracle labels grid points, the solver must not
  // refute any scenario in which the oracle found a violation.
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    std::mt19937_64 rng(seed);
    Network net = dense(3, 2, 0.0, 0.0, Activation::sigmoid);
    net.prescale = {{1 / 83.4, 0}, {1 / 50000.0, 0}, {1 / 50000.0, 0}};
    for (auto& row : net.layers[0].weights)
      for (double& w : row) w = uniform(rng, -4, 4);
    for (double& b : net.layers[0].biases) b = uniform(rng, -1, 1);
    for (EtcsScenario s : {EtcsScenario::C, EtcsScenario::D, EtcsScenario::severe}) {
      const auto sys = build_etcs_scenario(s, net);
      const auto cex = brute_force_oracle(sys, 20);
      if (cex) {
        EXPECT_NE(solve(sys).outcome, Outcome::unsat);
      }
    }
  }
}

TEST(Mnist, Clamp) {
  const Network net = dense(4, 10, 0.1, 0.0, Activation::sigmoid);
  const auto zeros = build_mnist_robustness({{3, {0, 0, 0, 0}}, 5, 0.01}, net);
  for (int k = 0; k < 4; ++k)
    EXPECT_EQ(zeros.var(zeros.lookup("in" + std::to_string(k))).initial, Interval::closed(0, 0.01));
  const auto ones = build_mnist_robustness({{3, {1, 1, 1, 1}}, 5, 0.01}, net);
  EXPECT_EQ(ones.var(ones.lookup("in0")).initial, Interval::closed(0.99, 1));
  const auto mid = build_mnist_robustness({{3, {0.5, 0.3, 0.7, 0.999}}, 5, 0.01}, net);
  for (int k = 0; k < 4; ++k) {
    const auto& iv = mid.var(mid.lookup("in" + std::to_string(k))).initial;
    EXPECT_TRUE(iv.is_subset_of(Interval::closed(0, 1)));
  }
  EXPECT_LE(mid.var(mid.lookup("in1")).initial.lo(), 0.3 - 0.01);
  ASSERT_EQ(mid.bounds().size(), 1u);
  EXPECT_EQ(mid.bounds()[0], (BoundAtom{mid.lookup("margin"), Relation::ge, 0}));
  const auto& eq = std::get<AffineSumEq>(mid.equations().back());
  EXPECT_EQ(eq.terms, (std::vector<AffineTerm>{{1.0, mid.lookup("out5")}, {-1.0, mid.lookup("out3")}}));
}

TEST(Mnist, NineSystemsPerSample) {
  const Network net = dense(4, 10, 0.1, 0.0, Activation::sigmoid);
  std::size_t total = 0;
  for (int s = 0; s < 20; ++s) total += build_mnist_sample({s % 10, {0.1, 0.2, 0.3, 0.4}}, net).size();
  EXPECT_EQ(total, 180u);
}

TEST(Mnist, Errors) {
  const Network net = dense(4, 10, 0.1, 0.0);
  EXPECT_THROW((void)build_mnist_robustness({{3, {0, 0, 0}}, 5, 0.01}, net), std::invalid_argument);
  EXPECT_THROW((void)build_mnist_robustness({{3, {0, 0, 0, 0}}, 3, 0.01}, net), std::invalid_argument);
  EXPECT_THROW((void)build_mnist_robustness({{3, {0, 0, 0, 0}}, 5, 0.01}, dense(4, 9, 0.1, 0)),
               std::invalid_argument);
}

TEST(Mnist, IdenticalOutputsAreNotRobust) {
  // Equal logits: out_rival >= out_true holds everywhere.
  const auto sys = build_mnist_robustness({{3, {0.2, 0.4, 0.6, 0.8}}, 5, 0.01}, dense(4, 10, 0.1, 0.0));
  EXPECT_EQ(solve(sys).outcome, Outcome::candidate);
}

TEST(Mnist, CsvLoader) {
  const auto s = parse_samples_csv("7,0,0.5,1\n\n2, 0.25 ,0.75,0\r\n");
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[0].digit, 7);
  EXPECT_EQ(s[1].pixels, (std::vector<double>{0.25, 0.75, 0}));
  EXPECT_THROW((void)parse_samples_csv("7,0,2\n"), std::runtime_error);
  EXPECT_THROW((void)parse_samples_csv("7,0,1\n3,0\n"), std::runtime_error);
  EXPECT_THROW((void)parse_samples_csv("11,0,1\n"), std::runtime_error);
  EXPECT_THROW((void)parse_samples_csv("1,x\n"), std::runtime_error);
}

TEST(Mnist, IdxLoader) {
  const auto dir = std::filesystem::temp_directory_path();
  const auto img = dir / "nnicp_test_images.idx";
  const auto lab = dir / "nnicp_test_labels.idx";
  {
    std::ofstream i(img, std::ios::binary);
    const unsigned char header[] = {0, 0, 8, 3, 0, 0, 0, 2, 0, 0, 0, 1, 0, 0, 0, 2};
    i.write(reinterpret_cast<const char*>(header), sizeof header);
    const unsigned char px[] = {0, 255, 51, 102};
    i.write(reinterpret_cast<const char*>(px), sizeof px);
    std::ofstream l(lab, std::ios::binary);
    const unsigned char lh[] = {0, 0, 8, 1, 0, 0, 0, 2, 4, 9};
    l.write(reinterpret_cast<const char*>(lh), sizeof lh);
  }
  const auto s = load_idx(img, lab);
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[0].digit, 4);
  EXPECT_EQ(s[1].digit, 9);
  EXPECT_EQ(s[0].pixels, (std::vector<double>{0.0, 1.0}));
  EXPECT_EQ(s[1].pixels, (std::vector<double>{51 / 255.0, 102 / 255.0}));
  EXPECT_EQ(load_idx(img, lab, 1).size(), 1u);
  EXPECT_THROW((void)load_idx(lab, img), std::runtime_error);
  std::filesystem::remove(img);
  std::filesystem::remove(lab);
}
