#include "nnicp/mnist.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace nnicp {

namespace {

void check_target(const MnistTarget& t, const Network& net) {
  if (t.sample.digit < 0 || t.sample.digit > 9) throw std::invalid_argument("true digit out of range");
  if (t.rival < 0 || t.rival > 9 || t.rival == t.sample.digit)
    throw std::invalid_argument("rival digit must differ from the true digit");
  if (!(t.epsilon >= 0) || !std::isfinite(t.epsilon)) throw std::invalid_argument("epsilon must be >= 0");
  if (net.input_dim != t.sample.pixels.size())
    throw std::invalid_argument("network input arity " + std::to_string(net.input_dim) +
                                " does not match sample size " + std::to_string(t.sample.pixels.size()));
  if (net.output_dim() != 10) throw std::invalid_argument("digit network needs 10 outputs");
}

double parse_double(std::string_view s, std::size_t row) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  double v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size())
    throw std::runtime_error("row " + std::to_string(row) + ": bad number '" + std::string(s) + "'");
  return v;
}

std::uint32_t read_be32(std::istream& in) {
  unsigned char b[4];
  if (!in.read(reinterpret_cast<char*>(b), 4)) throw std::runtime_error("truncated IDX header");
  return (std::uint32_t{b[0]} << 24) | (std::uint32_t{b[1]} << 16) | (std::uint32_t{b[2]} << 8) | b[3];
}

}  // namespace

ConstraintSystem build_mnist_robustness(const MnistTarget& target, const Network& net, const SigmoidOptions& opts) {
  check_target(target, net);
  EncodedNetwork enc = encode_network(net, opts);
  ConstraintSystem& sys = enc.system;
  sys.metadata.origin = "mnist:" + std::to_string(target.sample.digit) + "->" + std::to_string(target.rival);
  for (std::size_t k = 0; k < enc.inputs.size(); ++k) {
    const double s = target.sample.pixels[k];
    const double lo = std::max(0.0, sub_down(s, target.epsilon));
    const double hi = std::min(1.0, add_up(s, target.epsilon));
    sys.var(enc.inputs[k]).initial = Interval::closed(lo, hi);
  }
  const VarId margin = sys.add_variable("margin", Interval::entire());
  sys.add_equation(AffineSumEq{margin,
                               {{1.0, enc.outputs[static_cast<std::size_t>(target.rival)]},
                                {-1.0, enc.outputs[static_cast<std::size_t>(target.sample.digit)]}},
                               0.0});
  sys.add_bound({margin, Relation::ge, 0.0});
  return std::move(enc.system);
}

std::vector<ConstraintSystem> build_mnist_sample(const DigitSample& sample, const Network& net, double epsilon,
                                                 const SigmoidOptions& opts) {
  std::vector<ConstraintSystem> out;
  for (int j = 0; j < 10; ++j)
    if (j != sample.digit) out.push_back(build_mnist_robustness({sample, j, epsilon}, net, opts));
  return out;
}

std::vector<DigitSample> parse_samples_csv(std::string_view text) {
  std::vector<DigitSample> out;
  std::size_t row = 0;
  std::size_t width = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++row;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    std::vector<double> cells;
    while (true) {
      const auto comma = line.find(',');
      cells.push_back(parse_double(line.substr(0, comma), row));
      if (comma == std::string_view::npos) break;
      line.remove_prefix(comma + 1);
    }
    if (cells.size() < 2) throw std::runtime_error("row " + std::to_string(row) + ": no pixels");
    if (width == 0) width = cells.size();
    if (cells.size() != width) throw std::runtime_error("row " + std::to_string(row) + ": inconsistent width");
    const double d = cells.front();
    if (d != std::floor(d) || d < 0 || d > 9) throw std::runtime_error("row " + std::to_string(row) + ": bad digit");
    DigitSample s{static_cast<int>(d), {cells.begin() + 1, cells.end()}};
    for (double p : s.pixels)
      if (!(p >= 0 && p <= 1)) throw std::runtime_error("row " + std::to_string(row) + ": pixel outside [0, 1]");
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<DigitSample> load_samples_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_samples_csv(ss.str());
}

std::vector<DigitSample> load_idx(const std::filesystem::path& images, const std::filesystem::path& labels,
                                  std::size_t limit) {
  std::ifstream img(images, std::ios::binary);
  std::ifstream lab(labels, std::ios::binary);
  if (!img) throw std::runtime_error("cannot open " + images.string());
  if (!lab) throw std::runtime_error("cannot open " + labels.string());
  if (read_be32(img) != 0x803) throw std::runtime_error("bad image file magic");
  if (read_be32(lab) != 0x801) throw std::runtime_error("bad label file magic");
  const std::uint32_t n = read_be32(img);
  const std::uint32_t rows = read_be32(img);
  const std::uint32_t cols = read_be32(img);
  if (read_be32(lab) != n) throw std::runtime_error("image and label counts differ");
  std::size_t count = n;
  if (limit != 0) count = std::min<std::size_t>(count, limit);
  const std::size_t px = std::size_t{rows} * cols;
  std::vector<DigitSample> out;
  out.reserve(count);
  std::vector<unsigned char> buf(px);
  for (std::size_t i = 0; i < count; ++i) {
    char label = 0;
    if (!lab.get(label)) throw std::runtime_error("truncated label file");
    if (!img.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(px)))
      throw std::runtime_error("truncated image file");
    DigitSample s;
    s.digit = static_cast<unsigned char>(label);
    if (s.digit > 9) throw std::runtime_error("label out of range");
    s.pixels.resize(px);
    for (std::size_t k = 0; k < px; ++k) s.pixels[k] = buf[k] / 255.0;
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace nnicp
