#include "usvctl/metrics.hpp"

#include <json.hpp>

#include <cmath>
#include <stdexcept>

namespace usvctl {

namespace {

struct Bounds {
  Vec3 lo, hi;
  bool check_rate = false;
  Vec3 rate_hi = Vec3::Zero();
};

Bounds active_bounds(const ScenarioConfig& cfg) {
  Bounds b;
  SatStack stack = cfg.baseline_stack;
  if (cfg.method == Method::ProposedAsym) stack = SatStack::Asym;
  if (cfg.method == Method::ProposedMagrate) stack = SatStack::Magrate;

  if (stack == SatStack::Asym) {
    b.lo = -cfg.asym.tau_min_mag;
    b.hi = cfg.asym.tau_max;
  } else {
    b.lo = -cfg.magrate.tau_max;
    b.hi = cfg.magrate.tau_max;
    b.check_rate = cfg.method == Method::ProposedMagrate;
    b.rate_hi = cfg.magrate.rate_max;
  }
  return b;
}

}  // namespace

RunMetrics compute_metrics(const std::vector<SimRecord>& records,
                           const ScenarioConfig& cfg) {
  if (records.empty()) {
    throw std::invalid_argument("compute_metrics: empty record stream");
  }

  const Bounds bounds = active_bounds(cfg);
  RunMetrics m;

  double pos_sq_sum = 0.0;
  double head_sq_sum = 0.0;
  for (const SimRecord& r : records) {
    pos_sq_sum += r.z1[0] * r.z1[0] + r.z1[1] * r.z1[1];
    head_sq_sum += r.z1[2] * r.z1[2];

    for (int a = 0; a < 3; ++a) {
      m.max_abs_tau[a] = std::max(m.max_abs_tau[a], std::abs(r.tau[a]));
      m.max_abs_tau_rate[a] =
          std::max(m.max_abs_tau_rate[a], std::abs(r.tau_rate[a]));
      if (r.tau[a] > bounds.hi[a] || r.tau[a] < bounds.lo[a]) {
        ++m.constraint_violation_count;
      }
      if (bounds.check_rate &&
          std::abs(r.tau_rate[a]) > bounds.rate_hi[a] + kRateCheckTolerance) {
        ++m.constraint_violation_count;
      }
    }
  }
  const double n = static_cast<double>(records.size());
  m.rmse_position = std::sqrt(pos_sq_sum / n);
  m.rmse_heading = std::sqrt(head_sq_sum / n);

  // First time after which the error stays inside the settle thresholds.
  long settle_ix = -1;
  for (long i = static_cast<long>(records.size()) - 1; i >= 0; --i) {
    const SimRecord& r = records[i];
    const double pos = std::hypot(r.z1[0], r.z1[1]);
    if (pos >= cfg.settle_pos_threshold ||
        std::abs(r.z1[2]) >= cfg.settle_heading_threshold) {
      break;
    }
    settle_ix = i;
  }
  if (settle_ix >= 0) {
    m.settled = true;
    m.settle_time_s = records[settle_ix].t;
  }

  const SimRecord& last = records.back();
  m.final_disturbance_error = (last.b - last.b_hat).norm();
  return m;
}

std::string metrics_to_json_text(const RunMetrics& m) {
  nlohmann::ordered_json j;
  j["rmse_position"] = m.rmse_position;
  j["rmse_heading"] = m.rmse_heading;
  j["max_abs_tau"] = {m.max_abs_tau[0], m.max_abs_tau[1], m.max_abs_tau[2]};
  j["max_abs_tau_rate"] = {m.max_abs_tau_rate[0], m.max_abs_tau_rate[1],
                           m.max_abs_tau_rate[2]};
  j["constraint_violation_count"] = m.constraint_violation_count;
  j["settled"] = m.settled;
  j["settle_time_s"] = m.settle_time_s;
  j["final_disturbance_error"] = m.final_disturbance_error;
  return j.dump(2) + "\n";
}

}  // namespace usvctl
