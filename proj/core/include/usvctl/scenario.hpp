#pragma once

#include "usvctl/controller.hpp"
#include "usvctl/disturbance.hpp"
#include "usvctl/saturation.hpp"
#include "usvctl/trajectory.hpp"
#include "usvctl/types.hpp"
#include "usvctl/vessel.hpp"

#include <filesystem>
#include <string>

namespace usvctl {

/// Schema tag every scenario document must carry.
inline constexpr const char* kScenarioSchema = "usv-trackctl/v1";

/// Full description of one closed-loop run.
struct ScenarioConfig {
  std::string name = "scenario";
  Method method = Method::ProposedAsym;
  TrajectoryConfig trajectory = TrajectoryConfig::ellipse();

  Vec3 eta0 = Vec3(-1.0, 0.0, 0.01);  // initial pose [m, m, rad]
  Vec3 nu0 = Vec3::Zero();            // initial body rates

  VesselParams vessel = cybership2_params();
  bool cubic_surge_damping = false;

  Vec3 observer_gain = Vec3(10.0, 10.0, 10.0);  // K0 diagonal
  ControllerGains gains = ControllerGains::asym_defaults();
  AsymSatConfig asym;
  RateSatConfig magrate;
  SatStack baseline_stack = SatStack::Asym;  // bounds used by adhoc/unbounded

  DisturbanceSpec disturbance;

  double dt = 0.01;        // [s]
  double duration = 400.0; // [s]

  double settle_pos_threshold = 0.05;      // [m]
  double settle_heading_threshold = 0.05;  // [rad]

  void validate() const;
};

/// Scenario pre-filled with the stock gain table for the given stack and the
/// matching default horizon (400 s ellipse, 300 s figure-8).
ScenarioConfig default_scenario(Method method, TrajectoryKind kind);

ScenarioConfig scenario_from_json_text(const std::string& text);
ScenarioConfig load_scenario(const std::filesystem::path& path);
std::string scenario_to_json_text(const ScenarioConfig& cfg);

}  // namespace usvctl
