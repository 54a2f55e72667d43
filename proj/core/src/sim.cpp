#include "usvctl/sim.hpp"

#include "usvctl/observer.hpp"

#include <cmath>
#include <sstream>

namespace usvctl {

namespace {

constexpr double kInstabilityNorm = 1e6;

// Monolithic integration state: [eta, nu, z_obs, zeta, tau_c]; the actuator
// entries are present only when the method runs a saturation model.
using StateVec = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, 15, 1>;

int state_size(Method m) {
  switch (m) {
    case Method::ProposedAsym: return 12;
    case Method::ProposedMagrate: return 15;
    default: return 9;
  }
}

}  // namespace

RunResult run_scenario(const ScenarioConfig& cfg) {
  cfg.validate();

  const VesselModel model(cfg.vessel, cfg.cubic_surge_damping);
  BacksteppingController controller(cfg.method, model, cfg.gains, cfg.asym,
                                    cfg.magrate, cfg.dt, cfg.baseline_stack);

  const Method method = cfg.method;
  const bool has_actuator =
      method == Method::ProposedAsym || method == Method::ProposedMagrate;
  const bool magrate = method == Method::ProposedMagrate;
  const int dim = state_size(method);

  StateVec y(dim);
  y.setZero();
  y.segment<3>(0) = cfg.eta0;
  y.segment<3>(3) = cfg.nu0;
  // z chosen so that b_hat(0) = 0 for the initial velocity.
  y.segment<3>(6) =
      -cfg.observer_gain.cwiseProduct(model.mass() * cfg.nu0);

  const long steps = std::lround(cfg.duration / cfg.dt);
  const double drive_bound = magrate ? cfg.magrate.drive_norm_bound
                                     : cfg.asym.drive_norm_bound;

  RunResult result;
  result.records.reserve(steps + 1);

  Vec3 prev_tau = Vec3::Zero();

  for (long k = 0; k <= steps; ++k) {
    const double t = k * cfg.dt;
    const ReferenceSample ref = sample_reference(cfg.trajectory, t);
    const Vec3 b = cfg.disturbance.value(t);

    const Vec3 eta = y.segment<3>(0);
    const Vec3 nu = y.segment<3>(3);
    const Vec3 z_obs = y.segment<3>(6);
    const Vec3 b_hat =
        disturbance_estimate(z_obs, cfg.observer_gain, model.mass(), nu);

    ActuatorState act;
    if (has_actuator) act.zeta = y.segment<3>(9);
    if (magrate) act.tau_c = y.segment<3>(12);

    const ControlDecision d = controller.step(eta, nu, ref, b_hat, act);
    const Vec3 tau = has_actuator ? act.zeta : d.drive;

    if (has_actuator) {
      result.drive_norm_max = std::max(result.drive_norm_max, d.drive.norm());
    }

    SimRecord rec;
    rec.t = t;
    rec.eta = eta;
    rec.nu = nu;
    rec.eta_d = ref.eta_d;
    rec.tau = tau;
    rec.tau_rate = k == 0 ? Vec3::Zero() : Vec3((tau - prev_tau) / cfg.dt);
    rec.b = b;
    rec.b_hat = b_hat;
    rec.z1 = d.z1;

    const Vec3 b_err = b - b_hat;
    double v = 0.5 * d.z1.squaredNorm() +
               0.5 * d.z2.dot(model.mass() * d.z2) + 0.5 * b_err.squaredNorm();
    if (has_actuator) v += 0.5 * d.z3.squaredNorm();
    if (magrate) v += 0.5 * d.z4.squaredNorm();
    rec.lyapunov = v;

    result.records.push_back(rec);
    prev_tau = tau;
    if (k == steps) break;

    const Vec3 drive = d.drive;  // zero-order hold over the step
    auto deriv = [&](double ts, const StateVec& s) {
      StateVec out(dim);
      const Vec3 nu_s = s.segment<3>(3);
      const Vec3 b_s = cfg.disturbance.value(ts);
      const Vec3 tau_s = has_actuator ? Vec3(s.segment<3>(9)) : drive;

      out.segment<3>(0) = kinematics_deriv(s.segment<3>(0), nu_s);
      out.segment<3>(3) = model.dynamics_deriv(nu_s, tau_s, b_s);
      out.segment<3>(6) = observer_state_deriv(
          s.segment<3>(6), cfg.observer_gain, model, nu_s, tau_s);
      if (method == Method::ProposedAsym) {
        out.segment<3>(9) =
            asym_saturation_deriv(s.segment<3>(9), drive, cfg.asym);
      } else if (magrate) {
        ActuatorState as;
        as.zeta = s.segment<3>(9);
        as.tau_c = s.segment<3>(12);
        const RateSatDeriv rd = rate_saturation_deriv(as, drive, cfg.magrate);
        out.segment<3>(9) = rd.zeta_dot;
        out.segment<3>(12) = rd.tau_c_dot;
      }
      return out;
    };

    y = rk4_step(t, y, cfg.dt, deriv);

    if (!y.allFinite() || y.norm() > kInstabilityNorm) {
      std::ostringstream msg;
      msg << "integration aborted at t = " << t + cfg.dt
          << " s: state norm " << y.norm()
          << (y.allFinite() ? " exceeds 1e6" : " is not finite");
      result.aborted = true;
      result.abort_reason = msg.str();
      break;
    }
  }

  result.clamp_events = controller.clamp_event_total();
  if (has_actuator && result.drive_norm_max > drive_bound) {
    result.drive_bound_ok = false;
    std::ostringstream msg;
    if (!result.abort_reason.empty()) msg << result.abort_reason << "; ";
    msg << "controller drive norm " << result.drive_norm_max
        << " exceeded the assumed bound " << drive_bound;
    result.abort_reason = msg.str();
  }
  return result;
}

}  // namespace usvctl
