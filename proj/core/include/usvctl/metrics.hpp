#pragma once

#include "usvctl/scenario.hpp"
#include "usvctl/sim.hpp"

#include <string>
#include <vector>

namespace usvctl {

/// Tolerance on the finite-difference input-rate check [N/s].
inline constexpr double kRateCheckTolerance = 1e-3;

struct RunMetrics {
  double rmse_position = 0.0;     // RMS of planar position error norm [m]
  double rmse_heading = 0.0;      // RMS of wrapped heading error [rad]
  Vec3 max_abs_tau = Vec3::Zero();
  Vec3 max_abs_tau_rate = Vec3::Zero();
  long constraint_violation_count = 0;
  bool settled = false;
  double settle_time_s = -1.0;    // -1 when the run never settles
  double final_disturbance_error = 0.0;  // ||b - b_hat|| at the last record
};

/// Summarizes a record stream. The violation count uses the bounds of the
/// saturation stack the run's method is measured against: magnitude outside
/// the configured bounds, plus the finite-difference rate bound for the
/// magnitude+rate stack. Throws std::invalid_argument on an empty stream.
RunMetrics compute_metrics(const std::vector<SimRecord>& records,
                           const ScenarioConfig& cfg);

std::string metrics_to_json_text(const RunMetrics& m);

}  // namespace usvctl
