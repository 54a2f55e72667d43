#include "usvctl/controller.hpp"

#include <cmath>
#include <stdexcept>

namespace usvctl {

namespace {

double guarded_gap(double gap, int* clamp_events) {
  if (std::abs(gap) < kInverseGuard) {
    if (clamp_events != nullptr) ++*clamp_events;
    return kInverseGuard;
  }
  return gap;
}

}  // namespace

std::string to_string(Method m) {
  switch (m) {
    case Method::ProposedAsym: return "proposed-asym";
    case Method::ProposedMagrate: return "proposed-magrate";
    case Method::Adhoc: return "adhoc";
    case Method::Unbounded: return "unbounded";
  }
  return "unknown";
}

Method method_from_string(const std::string& name) {
  if (name == "proposed-asym") return Method::ProposedAsym;
  if (name == "proposed-magrate") return Method::ProposedMagrate;
  if (name == "adhoc") return Method::Adhoc;
  if (name == "unbounded") return Method::Unbounded;
  throw std::invalid_argument("unknown method '" + name +
                              "' (expected proposed-asym, proposed-magrate, "
                              "adhoc or unbounded)");
}

ControllerGains ControllerGains::asym_defaults() {
  ControllerGains g;
  g.k1 = Vec3(4.0, 3.0, 0.5);
  g.k2 = Vec3(2.0, 3.0, 0.5);
  g.k3 = Vec3(2.0, 3.0, 0.5);
  g.k4 = Vec3(0.2, 0.5, 0.1);  // unused by the asymmetric stack
  return g;
}

ControllerGains ControllerGains::magrate_defaults() {
  ControllerGains g;
  g.k1 = Vec3(0.02, 0.02, 0.05);
  g.k2 = Vec3(2.0, 3.0, 5.0);
  g.k3 = Vec3(2.0, 1.0, 5.0);
  g.k4 = Vec3(0.2, 0.5, 0.1);
  return g;
}

void ControllerGains::validate() const {
  if (!((k1.array() > 0.0).all() && (k2.array() > 0.0).all() &&
        (k3.array() > 0.0).all() && (k4.array() > 0.0).all())) {
    throw std::invalid_argument("controller gains must be positive");
  }
}

Vec3 pose_tracking_error(const Vec3& eta, const Vec3& eta_d) {
  Vec3 z1 = eta - eta_d;
  z1[2] = wrap_angle(z1[2]);
  return z1;
}

Vec3 velocity_stabilizer(double psi, const Vec3& z1, const Vec3& eta_d_dot,
                         const Vec3& k1) {
  return rotation_matrix(psi).transpose() * (eta_d_dot - k1.cwiseProduct(z1));
}

Vec3 force_stabilizer(const VesselModel& model, const Vec3& nu, double psi,
                      const Vec3& z1, const Vec3& z2, const Vec3& alpha1_dot,
                      const Vec3& b_hat, const Vec3& k2) {
  return model.coriolis(nu) * nu + model.damping(nu) * nu +
         model.mass() * alpha1_dot - k2.cwiseProduct(z2) -
         rotation_matrix(psi).transpose() * z1 - b_hat;
}

Vec3 asym_saturation_drive(const Vec3& z2, const Vec3& z3,
                           const Vec3& alpha2_dot, const Vec3& tau,
                           const AsymSatConfig& cfg, const Vec3& k3,
                           int* clamp_events) {
  Vec3 out;
  for (int i = 0; i < 3; ++i) {
    const double bound = tau[i] > 0.0 ? cfg.tau_max[i] : cfg.tau_min_mag[i];
    const double gap =
        guarded_gap(1.0 - even_pow(tau[i] / bound, cfg.n), clamp_events);
    out[i] = (cfg.rho[i] * tau[i] + alpha2_dot[i]) / gap - k3[i] * z3[i] -
             z2[i];
  }
  return out;
}

Vec3 rate_stage_stabilizer(const Vec3& z2, const Vec3& z3,
                           const Vec3& alpha2_dot, const Vec3& zeta,
                           const RateSatConfig& cfg, const Vec3& k3,
                           int* clamp_events) {
  Vec3 out;
  for (int i = 0; i < 3; ++i) {
    const double gap = guarded_gap(
        1.0 - even_pow(zeta[i] / cfg.tau_max[i], cfg.n), clamp_events);
    const double leak =
        cfg.rho1[i] * (cfg.rate_max[i] / cfg.tau_max[i]) * zeta[i];
    out[i] = (leak + alpha2_dot[i] - k3[i] * z3[i] - z2[i]) / gap;
  }
  return out;
}

Vec3 rate_saturation_drive(const Vec3& z3, const Vec3& z4,
                           const Vec3& alpha3_dot, const Vec3& tau_c,
                           const Vec3& zeta, const RateSatConfig& cfg,
                           const Vec3& k4, int* clamp_events) {
  Vec3 out;
  for (int i = 0; i < 3; ++i) {
    const double g1 = even_pow(zeta[i] / cfg.tau_max[i], cfg.n);
    const double cap = (1.0 - cfg.rho1[i]) * cfg.rate_max[i];
    const double gap =
        guarded_gap(1.0 - even_pow(tau_c[i] / cap, cfg.n), clamp_events);
    out[i] = (cfg.rho2[i] * tau_c[i] + alpha3_dot[i] - k4[i] * z4[i] -
              (1.0 - g1) * z3[i]) /
             gap;
  }
  return out;
}

Vec3 backward_difference(const Vec3& current, const Vec3& previous, double dt,
                         bool has_previous) {
  if (!has_previous) return Vec3::Zero();
  return (current - previous) / dt;
}

BacksteppingController::BacksteppingController(
    Method method, const VesselModel& model, const ControllerGains& gains,
    const AsymSatConfig& asym, const RateSatConfig& rate, double dt,
    SatStack baseline_stack)
    : method_(method),
      model_(&model),
      gains_(gains),
      asym_(asym),
      rate_(rate),
      dt_(dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("controller dt must be > 0");
  gains_.validate();
  asym_.validate();
  rate_.validate();
  if (baseline_stack == SatStack::Asym) {
    clamp_lo_ = -asym_.tau_min_mag;
    clamp_hi_ = asym_.tau_max;
  } else {
    clamp_lo_ = -rate_.tau_max;
    clamp_hi_ = rate_.tau_max;
  }
}

void BacksteppingController::reset() {
  alpha1_prev_ = alpha2_prev_ = alpha3_prev_ = Vec3::Zero();
  step_count_ = 0;
  clamp_total_ = 0;
}

ControlDecision BacksteppingController::step(const Vec3& eta, const Vec3& nu,
                                             const ReferenceSample& ref,
                                             const Vec3& b_hat,
                                             const ActuatorState& act) {
  ControlDecision d;
  const double psi = eta[2];

  // Each stabilizer derivative starts differencing one step after the one
  // it depends on, so a difference never straddles the cold-start sample
  // (that would inject an O(1/dt) spike into the drive).
  d.z1 = pose_tracking_error(eta, ref.eta_d);
  d.alpha1 = velocity_stabilizer(psi, d.z1, ref.eta_d_dot, gains_.k1);
  const Vec3 alpha1_dot =
      backward_difference(d.alpha1, alpha1_prev_, dt_, step_count_ >= 1);

  d.z2 = nu - d.alpha1;
  d.alpha2 = force_stabilizer(*model_, nu, psi, d.z1, d.z2, alpha1_dot, b_hat,
                              gains_.k2);
  const Vec3 alpha2_dot =
      backward_difference(d.alpha2, alpha2_prev_, dt_, step_count_ >= 2);

  switch (method_) {
    case Method::Unbounded:
      d.drive = d.alpha2;
      break;
    case Method::Adhoc:
      d.drive = d.alpha2.cwiseMax(clamp_lo_).cwiseMin(clamp_hi_);
      break;
    case Method::ProposedAsym: {
      d.z3 = act.zeta - d.alpha2;
      d.drive = asym_saturation_drive(d.z2, d.z3, alpha2_dot, act.zeta, asym_,
                                      gains_.k3, &d.clamp_events);
      break;
    }
    case Method::ProposedMagrate: {
      d.z3 = act.zeta - d.alpha2;
      d.alpha3 = rate_stage_stabilizer(d.z2, d.z3, alpha2_dot, act.zeta, rate_,
                                       gains_.k3, &d.clamp_events);
      const Vec3 alpha3_dot =
          backward_difference(d.alpha3, alpha3_prev_, dt_, step_count_ >= 3);
      d.z4 = act.tau_c - d.alpha3;
      d.drive = rate_saturation_drive(d.z3, d.z4, alpha3_dot, act.tau_c,
                                      act.zeta, rate_, gains_.k4,
                                      &d.clamp_events);
      break;
    }
  }

  alpha1_prev_ = d.alpha1;
  alpha2_prev_ = d.alpha2;
  alpha3_prev_ = d.alpha3;
  ++step_count_;
  clamp_total_ += d.clamp_events;
  return d;
}

}  // namespace usvctl
