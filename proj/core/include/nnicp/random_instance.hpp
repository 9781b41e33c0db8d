#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "nnicp/network.hpp"

namespace nnicp {

/// Uniform double in [lo, hi) from 53 random bits. Unlike the standard
/// distributions this is identical across library implementations.
[[nodiscard]] double uniform(std::mt19937_64& rng, double lo, double hi);
[[nodiscard]] std::uint64_t uniform_int(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi);

struct RandomShape {
  std::size_t min_inputs = 2;
  std::size_t max_inputs = 3;
  std::size_t max_hidden_layers = 3;
  std::size_t max_width = 4;
  double weight_range = 3.0;
  double bias_range = 2.0;
};

/// A small sigmoid network with two outputs together with a scenario-style
/// property: a box on the inputs and the negated claim
/// margin = out0 - out1, margin (>|>=) threshold.
struct RandomInstance {
  std::uint64_t seed = 0;
  Network net;
  std::vector<Interval> input_box;
  Relation rel = Relation::gt;
  double threshold = 0.0;

  [[nodiscard]] ConstraintSystem build(const SigmoidOptions& opts = {}) const;
};

/// Deterministic in `seed`. The threshold is placed a random distance
/// above or below the largest margin seen on a sample of input points, so
/// both outcomes occur.
[[nodiscard]] RandomInstance random_instance(std::uint64_t seed, const RandomShape& shape = {});

}  // namespace nnicp
