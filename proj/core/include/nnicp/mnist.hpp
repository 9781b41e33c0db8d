#pragma once

#include <filesystem>
#include <vector>

#include "nnicp/network.hpp"

namespace nnicp {

struct DigitSample {
  int digit = 0;
  /// Pixels normalized to [0, 1].
  std::vector<double> pixels;
};

struct MnistTarget {
  DigitSample sample;
  int rival = 0;
  double epsilon = 0.01;
};

/// Inputs clamped to [max(0, s_k - eps), min(1, s_k + eps)] (outward
/// rounded), plus the counterexample condition
/// margin = out_rival - out_true, margin >= 0.
[[nodiscard]] ConstraintSystem build_mnist_robustness(const MnistTarget& target, const Network& net,
                                                      const SigmoidOptions& opts = {});

/// The nine systems of one sample, one per rival digit.
[[nodiscard]] std::vector<ConstraintSystem> build_mnist_sample(const DigitSample& sample, const Network& net,
                                                               double epsilon = 0.01,
                                                               const SigmoidOptions& opts = {});

/// CSV: one row per sample, true digit first, then the pixel values.
[[nodiscard]] std::vector<DigitSample> load_samples_csv(const std::filesystem::path& path);
[[nodiscard]] std::vector<DigitSample> parse_samples_csv(std::string_view text);

/// Raw MNIST IDX image (magic 0x00000803) and label (0x00000801) files;
/// pixels are scaled by 1/255. `limit` = 0 reads everything.
[[nodiscard]] std::vector<DigitSample> load_idx(const std::filesystem::path& images,
                                                const std::filesystem::path& labels, std::size_t limit = 0);

}  // namespace nnicp
