#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "nnicp/lowering.hpp"
#include "nnicp/system.hpp"

namespace nnicp {

enum class Activation : std::uint8_t { sigmoid, linear };

struct Layer {
  /// Row-major, outputs x inputs.
  std::vector<std::vector<double>> weights;
  std::vector<double> biases;
  Activation activation = Activation::sigmoid;

  [[nodiscard]] std::size_t outputs() const { return biases.size(); }
  [[nodiscard]] std::size_t inputs() const { return weights.empty() ? 0 : weights.front().size(); }
};

struct InputScale {
  double scale = 1.0;
  double offset = 0.0;
};

/// Fully connected feedforward network.
struct Network {
  std::size_t input_dim = 0;
  /// Optional per-input affine map applied before the first layer.
  std::vector<InputScale> prescale;
  std::vector<Layer> layers;

  [[nodiscard]] std::size_t output_dim() const {
    return layers.empty() ? input_dim : layers.back().outputs();
  }

  /// Throws NetworkError on dimension mismatch or non-finite entries.
  void validate() const;
};

class NetworkError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Network JSON:
///   {"input_dim": int, "prescale": [[scale, offset], ...],
///    "layers": [{"weights": [[...], ...], "biases": [...],
///                "activation": "sigmoid" | "linear"}, ...]}
/// Numbers are read as binary64 without loss.
[[nodiscard]] Network parse_network(std::string_view json_text);
[[nodiscard]] Network load_network(const std::filesystem::path& path);
[[nodiscard]] std::string network_to_json(const Network& net);

/// Numeric forward pass in binary64 (sigmoid via the same extended
/// precision evaluation as the propagators).
[[nodiscard]] std::vector<double> evaluate(const Network& net, const std::vector<double>& input);

struct EncodedNetwork {
  ConstraintSystem system;
  std::vector<VarId> inputs;
  std::vector<VarId> outputs;
};

/// One AffineSum per neuron feeding its activation, with the sigmoid
/// encoded per `opts`. Inputs start unconstrained.
[[nodiscard]] EncodedNetwork encode_network(const Network& net, const SigmoidOptions& opts = {});

}  // namespace nnicp
