#include "nnicp/network.hpp"

#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "nnicp/sigmoid.hpp"

namespace nnicp {

using nlohmann::json;

void Network::validate() const {
  if (input_dim == 0) throw NetworkError("input_dim must be positive");
  if (!prescale.empty() && prescale.size() != input_dim)
    throw NetworkError("prescale has " + std::to_string(prescale.size()) + " entries, expected " +
                       std::to_string(input_dim));
  for (const auto& p : prescale) {
    if (!std::isfinite(p.scale) || !std::isfinite(p.offset)) throw NetworkError("non-finite prescale entry");
  }
  if (layers.empty()) throw NetworkError("network has no layers");
  std::size_t width = input_dim;
  for (std::size_t l = 0; l < layers.size(); ++l) {
    const Layer& layer = layers[l];
    const std::string where = "layer " + std::to_string(l) + ": ";
    if (layer.weights.size() != layer.biases.size())
      throw NetworkError(where + "dimension mismatch: " + std::to_string(layer.weights.size()) +
                         " weight rows but " + std::to_string(layer.biases.size()) + " biases");
    if (layer.biases.empty()) throw NetworkError(where + "no neurons");
    for (const auto& row : layer.weights) {
      if (row.size() != width)
        throw NetworkError(where + "dimension mismatch: weight row has " + std::to_string(row.size()) +
                           " entries, expected " + std::to_string(width));
      for (double w : row) {
        if (!std::isfinite(w)) throw NetworkError(where + "non-finite weight");
      }
    }
    for (double b : layer.biases) {
      if (!std::isfinite(b)) throw NetworkError(where + "non-finite bias");
    }
    width = layer.biases.size();
  }
}

namespace {

double number(const json& j, const char* what) {
  if (!j.is_number()) throw NetworkError(std::string(what) + " must be a number");
  return j.get<double>();
}

}  // namespace

Network parse_network(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw NetworkError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw NetworkError("network JSON must be an object");
  Network net;
  const auto dim = doc.find("input_dim");
  if (dim == doc.end() || !dim->is_number_unsigned()) throw NetworkError("input_dim must be a nonnegative integer");
  net.input_dim = dim->get<std::size_t>();
  if (auto ps = doc.find("prescale"); ps != doc.end()) {
    if (!ps->is_array()) throw NetworkError("prescale must be an array");
    for (const auto& p : *ps) {
      if (!p.is_array() || p.size() != 2) throw NetworkError("prescale entries must be [scale, offset]");
      net.prescale.push_back({number(p[0], "scale"), number(p[1], "offset")});
    }
  }
  const auto layers = doc.find("layers");
  if (layers == doc.end() || !layers->is_array()) throw NetworkError("layers must be an array");
  for (const auto& l : *layers) {
    if (!l.is_object()) throw NetworkError("layer must be an object");
    Layer layer;
    const auto w = l.find("weights");
    const auto b = l.find("biases");
    const auto a = l.find("activation");
    if (w == l.end() || !w->is_array()) throw NetworkError("layer.weights must be an array of rows");
    if (b == l.end() || !b->is_array()) throw NetworkError("layer.biases must be an array");
    if (a == l.end() || !a->is_string()) throw NetworkError("layer.activation must be a string");
    for (const auto& row : *w) {
      if (!row.is_array()) throw NetworkError("weight row must be an array");
      std::vector<double> r;
      r.reserve(row.size());
      for (const auto& v : row) r.push_back(number(v, "weight"));
      layer.weights.push_back(std::move(r));
    }
    for (const auto& v : *b) layer.biases.push_back(number(v, "bias"));
    const std::string act = a->get<std::string>();
    if (act == "sigmoid") {
      layer.activation = Activation::sigmoid;
    } else if (act == "linear") {
      layer.activation = Activation::linear;
    } else {
      throw NetworkError("unknown activation '" + act + "'");
    }
    net.layers.push_back(std::move(layer));
  }
  net.validate();
  return net;
}

Network load_network(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw NetworkError("cannot open network file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_network(buf.str());
}

std::string network_to_json(const Network& net) {
  json doc;
  doc["input_dim"] = net.input_dim;
  if (!net.prescale.empty()) {
    json ps = json::array();
    for (const auto& p : net.prescale) ps.push_back({p.scale, p.offset});
    doc["prescale"] = ps;
  }
  json layers = json::array();
  for (const auto& layer : net.layers) {
    layers.push_back({{"weights", layer.weights},
                      {"biases", layer.biases},
                      {"activation", layer.activation == Activation::sigmoid ? "sigmoid" : "linear"}});
  }
  doc["layers"] = layers;
  return doc.dump(2);
}

std::vector<double> evaluate(const Network& net, const std::vector<double>& input) {
  if (input.size() != net.input_dim) throw NetworkError("input has wrong dimension");
  std::vector<double> act = input;
  for (std::size_t k = 0; k < net.prescale.size(); ++k) {
    act[k] = net.prescale[k].scale * act[k] + net.prescale[k].offset;
  }
  for (const auto& layer : net.layers) {
    std::vector<double> next(layer.outputs());
    for (std::size_t j = 0; j < layer.outputs(); ++j) {
      double s = 0.0;
      for (std::size_t i = 0; i < act.size(); ++i) {
        if (layer.weights[j][i] != 0.0) s += layer.weights[j][i] * act[i];
      }
      s += layer.biases[j];
      next[j] = layer.activation == Activation::sigmoid ? sigma(s) : s;
    }
    act = std::move(next);
  }
  return act;
}

EncodedNetwork encode_network(const Network& net, const SigmoidOptions& opts) {
  net.validate();
  opts.validate();
  EncodedNetwork enc;
  ConstraintSystem& sys = enc.system;
  sys.metadata.encoding = opts.encoding;

  std::vector<VarId> act;
  for (std::size_t k = 0; k < net.input_dim; ++k) {
    const VarId in = sys.add_variable("in" + std::to_string(k), Interval::entire());
    enc.inputs.push_back(in);
    act.push_back(in);
  }
  for (std::size_t k = 0; k < net.prescale.size(); ++k) {
    const auto& p = net.prescale[k];
    const std::string name = "_sin" + std::to_string(k);
    if (p.scale == 0.0) {
      act[k] = sys.add_variable(name, Interval::point(p.offset), true);
      continue;
    }
    const VarId s = sys.add_variable(name, Interval::entire(), true);
    sys.add_equation(AffineSumEq{s, {{p.scale, enc.inputs[k]}}, p.offset});
    act[k] = s;
  }

  const Interval sig_range = opts.encoding == SigmoidEncoding::approximating
                                 ? Interval::closed(0.0, 1.0)
                                 : Interval::make(0.0, true, 1.0, true);
  for (std::size_t l = 0; l < net.layers.size(); ++l) {
    const Layer& layer = net.layers[l];
    const bool last = l + 1 == net.layers.size();
    const std::string tag = std::to_string(l + 1) + "_";
    std::vector<VarId> next;
    for (std::size_t j = 0; j < layer.outputs(); ++j) {
      const bool sig = layer.activation == Activation::sigmoid;
      const std::string pre_name = (last && !sig) ? "out" + std::to_string(j) : "_a" + tag + std::to_string(j);
      AffineSumEq sum{var_id(0), {}, layer.biases[j]};
      for (std::size_t i = 0; i < act.size(); ++i) {
        if (layer.weights[j][i] != 0.0) sum.terms.push_back({layer.weights[j][i], act[i]});
      }
      const bool pre_aux = !(last && !sig);
      VarId pre;
      if (sum.terms.empty()) {
        pre = sys.add_variable(pre_name, Interval::point(layer.biases[j]), pre_aux);
      } else {
        pre = sys.add_variable(pre_name, Interval::entire(), pre_aux);
        sum.y = pre;
        sys.add_equation(std::move(sum));
      }
      if (!sig) {
        next.push_back(pre);
        continue;
      }
      const std::string post_name = last ? "out" + std::to_string(j) : "_h" + tag + std::to_string(j);
      const VarId post = sys.add_variable(post_name, sig_range, !last);
      encode_sigmoid(sys, pre, post, opts);
      next.push_back(post);
    }
    act = std::move(next);
  }
  enc.outputs = act;
  return enc;
}

}  // namespace nnicp
