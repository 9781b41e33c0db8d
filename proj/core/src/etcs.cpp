#include "nnicp/etcs.hpp"

#include <stdexcept>
#include <string>

namespace nnicp {

void EtcsParams::validate() const {
  if (!(safety_distance > 0)) throw std::invalid_argument("safety distance must be positive");
  if (!(max_deceleration < 0)) throw std::invalid_argument("maximum deceleration must be negative");
  if (!(max_velocity > 0)) throw std::invalid_argument("maximum velocity must be positive");
  if (!(track_length > 0)) throw std::invalid_argument("track length must be positive");
}

BrakingAssessment etcs_assess(double v, double x_head, double x_rear, const EtcsParams& params) {
  const double db = x_rear - (x_head + params.safety_distance);
  if (db < 0) throw std::invalid_argument("braking distance is negative");
  if (db == 0) {
    if (v == 0) return {db, 0.0, false};
    return {db, -kInf, true};
  }
  const double a = -(v * v) / (2 * db);
  return {db, a, a < params.max_deceleration};
}

bool etcs_ground_truth(double v, double x_head, double x_rear, const EtcsParams& params) {
  return etcs_assess(v, x_head, x_rear, params).braking;
}

EtcsScenario parse_etcs_scenario(std::string_view s) {
  if (s == "A") return EtcsScenario::A;
  if (s == "B") return EtcsScenario::B;
  if (s == "C") return EtcsScenario::C;
  if (s == "D") return EtcsScenario::D;
  if (s == "severe" || s == "SEVERE") return EtcsScenario::severe;
  throw std::invalid_argument("unknown ETCS scenario '" + std::string(s) + "'");
}

const char* to_string(EtcsScenario s) {
  switch (s) {
    case EtcsScenario::A: return "A";
    case EtcsScenario::B: return "B";
    case EtcsScenario::C: return "C";
    case EtcsScenario::D: return "D";
    case EtcsScenario::severe: return "severe";
  }
  return "?";
}

ConstraintSystem build_etcs_scenario(EtcsScenario scenario, const Network& net, const SigmoidOptions& opts,
                                     const EtcsParams& params) {
  params.validate();
  if (net.input_dim != 3) throw std::invalid_argument("ETCS network needs 3 inputs (v, x_h, x_r)");
  if (net.output_dim() != 2) throw std::invalid_argument("ETCS network needs 2 outputs (out0, out1)");
  EncodedNetwork enc = encode_network(net, opts);
  ConstraintSystem& sys = enc.system;
  sys.metadata.origin = std::string("etcs:") + to_string(scenario);
  const VarId v = enc.inputs[0];
  const VarId xh = enc.inputs[1];
  const VarId xr = enc.inputs[2];
  sys.var(v).initial = Interval::closed(0.0, params.max_velocity);
  sys.var(xh).initial = Interval::closed(0.0, params.track_length);
  sys.var(xr).initial = Interval::closed(0.0, params.track_length);

  auto gap = [&] {
    const VarId g = sys.add_variable("gap", Interval::entire());
    sys.add_equation(AffineSumEq{g, {{1.0, xr}, {-1.0, xh}}, 0.0});
    return g;
  };
  switch (scenario) {
    case EtcsScenario::A:
      break;
    case EtcsScenario::B:
      sys.add_bound({gap(), Relation::gt, 0.0});
      break;
    case EtcsScenario::C:
      sys.add_bound({v, Relation::gt, 25.0});
      sys.add_bound({xh, Relation::ge, 15000.0});
      sys.add_bound({xh, Relation::le, 15000.0});
      sys.add_bound({xr, Relation::ge, 35000.0});
      sys.add_bound({xr, Relation::le, 35000.0});
      break;
    case EtcsScenario::D:
      sys.add_bound({v, Relation::gt, 25.0});
      sys.add_bound({xh, Relation::lt, 800.0});
      sys.add_bound({xr, Relation::lt, 800.0});
      break;
    case EtcsScenario::severe: {
      sys.add_bound({v, Relation::gt, 20.0});
      sys.add_bound({v, Relation::le, 80.0});
      const VarId g = gap();
      sys.add_bound({g, Relation::ge, 0.0});
      sys.add_bound({g, Relation::le, params.safety_distance});
      break;
    }
  }
  const VarId margin = sys.add_variable("margin", Interval::entire());
  sys.add_equation(AffineSumEq{margin, {{1.0, enc.outputs[0]}, {-1.0, enc.outputs[1]}}, 0.0});
  sys.add_bound({margin, Relation::gt, 0.0});
  return std::move(enc.system);
}

}  // namespace nnicp
