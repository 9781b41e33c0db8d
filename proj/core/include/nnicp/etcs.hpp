#pragma once

#include <string_view>

#include "nnicp/network.hpp"

namespace nnicp {

/// Train-following emergency brake model. Units: m, m/s, m/s^2.
struct EtcsParams {
  double safety_distance = 400.0;
  double max_deceleration = -0.7;
  double max_velocity = 83.4;
  double track_length = 50000.0;

  void validate() const;
};

struct BrakingAssessment {
  /// Distance left before entering the safety margin: x_r - (x_h + S).
  double braking_distance;
  /// Deceleration needed to stop exactly at the margin: -v^2 / (2 d_b).
  double required_deceleration;
  bool braking;
};

/// Ground truth: brake iff the required deceleration is below
/// max_deceleration. d_b == 0 with v > 0 counts as braking; v == 0 never
/// brakes. Throws std::invalid_argument when d_b < 0.
[[nodiscard]] BrakingAssessment etcs_assess(double v, double x_head, double x_rear,
                                            const EtcsParams& params = {});
[[nodiscard]] bool etcs_ground_truth(double v, double x_head, double x_rear,
                                     const EtcsParams& params = {});

enum class EtcsScenario : std::uint8_t { A, B, C, D, severe };

[[nodiscard]] EtcsScenario parse_etcs_scenario(std::string_view s);
[[nodiscard]] const char* to_string(EtcsScenario s);

/// Encodes `net` (inputs v, x_h, x_r; outputs out0 "no brake" and out1
/// "brake"), bounds v to [0, v_max] and positions to [0, track_length],
/// adds the scenario's input atoms and the negated property
/// margin = out0 - out1, margin > 0. UNSAT means the network advises
/// braking everywhere in the scenario.
[[nodiscard]] ConstraintSystem build_etcs_scenario(EtcsScenario scenario, const Network& net,
                                                   const SigmoidOptions& opts = {},
                                                   const EtcsParams& params = {});

}  // namespace nnicp
