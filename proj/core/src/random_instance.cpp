#include "nnicp/random_instance.hpp"

#include <algorithm>
#include <cmath>

namespace nnicp {

double uniform(std::mt19937_64& rng, double lo, double hi) {
  const double u = static_cast<double>(rng() >> 11) * 0x1p-53;
  return lo + (hi - lo) * u;
}

std::uint64_t uniform_int(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi) {
  return lo + rng() % (hi - lo + 1);
}

ConstraintSystem RandomInstance::build(const SigmoidOptions& opts) const {
  EncodedNetwork enc = encode_network(net, opts);
  ConstraintSystem& sys = enc.system;
  sys.metadata.origin = "random:" + std::to_string(seed);
  for (std::size_t k = 0; k < enc.inputs.size(); ++k) sys.var(enc.inputs[k]).initial = input_box[k];
  const VarId margin = sys.add_variable("margin", Interval::entire());
  sys.add_equation(AffineSumEq{margin, {{1.0, enc.outputs[0]}, {-1.0, enc.outputs[1]}}, 0.0});
  sys.add_bound({margin, rel, threshold});
  return std::move(enc.system);
}

RandomInstance random_instance(std::uint64_t seed, const RandomShape& shape) {
  std::mt19937_64 rng(seed);
  RandomInstance inst;
  inst.seed = seed;
  Network& net = inst.net;
  net.input_dim = uniform_int(rng, shape.min_inputs, shape.max_inputs);
  const std::size_t hidden = uniform_int(rng, 1, shape.max_hidden_layers);
  std::size_t fan_in = net.input_dim;
  for (std::size_t l = 0; l <= hidden; ++l) {
    Layer layer;
    const bool last = l == hidden;
    const std::size_t width = last ? 2 : uniform_int(rng, 1, shape.max_width);
    layer.activation = last && (rng() & 1) ? Activation::linear : Activation::sigmoid;
    for (std::size_t j = 0; j < width; ++j) {
      std::vector<double> row(fan_in);
      for (double& w : row) w = uniform(rng, -shape.weight_range, shape.weight_range);
      layer.weights.push_back(std::move(row));
      layer.biases.push_back(uniform(rng, -shape.bias_range, shape.bias_range));
    }
    net.layers.push_back(std::move(layer));
    fan_in = width;
  }

  for (std::size_t k = 0; k < net.input_dim; ++k) {
    const double c = uniform(rng, -2.0, 2.0);
    const double r = uniform(rng, 0.05, 1.0);
    inst.input_box.push_back(Interval::closed(c - r, c + r));
  }

  double lo = kInf;
  double hi = -kInf;
  std::vector<double> x(net.input_dim);
  for (int s = 0; s < 64; ++s) {
    for (std::size_t k = 0; k < x.size(); ++k) x[k] = uniform(rng, inst.input_box[k].lo(), inst.input_box[k].hi());
    const auto out = evaluate(net, x);
    const double m = out[0] - out[1];
    lo = std::min(lo, m);
    hi = std::max(hi, m);
  }
  const double spread = std::max(hi - lo, 0.05);
  const double offset = uniform(rng, 0.05, 0.5) * spread;
  inst.threshold = (rng() & 1) ? hi + offset : hi - offset;
  inst.rel = (rng() & 1) ? Relation::gt : Relation::ge;
  return inst;
}

}  // namespace nnicp
