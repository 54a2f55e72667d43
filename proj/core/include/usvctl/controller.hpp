#pragma once

#include "usvctl/saturation.hpp"
#include "usvctl/trajectory.hpp"
#include "usvctl/types.hpp"
#include "usvctl/vessel.hpp"

#include <string>

namespace usvctl {

enum class Method { ProposedAsym, ProposedMagrate, Adhoc, Unbounded };
enum class SatStack { Asym, Magrate };

std::string to_string(Method m);
Method method_from_string(const std::string& name);

/// Diagonals of the positive gain matrices K1..K4.
struct ControllerGains {
  Vec3 k1 = Vec3::Zero();
  Vec3 k2 = Vec3::Zero();
  Vec3 k3 = Vec3::Zero();
  Vec3 k4 = Vec3::Zero();

  static ControllerGains asym_defaults();
  static ControllerGains magrate_defaults();
  void validate() const;
};

/// Diagonal-inverse guard: entries of (1 - g) closer to zero than this are
/// clamped before inversion. With the model bounds respected it never fires.
inline constexpr double kInverseGuard = 1e-6;

/// Per-step controller outputs, kept for logging and the Lyapunov assembly.
struct ControlDecision {
  Vec3 drive = Vec3::Zero();   // tau_c (asym), tau_d (magrate), tau (baselines)
  Vec3 z1 = Vec3::Zero();
  Vec3 z2 = Vec3::Zero();
  Vec3 z3 = Vec3::Zero();
  Vec3 z4 = Vec3::Zero();
  Vec3 alpha1 = Vec3::Zero();
  Vec3 alpha2 = Vec3::Zero();
  Vec3 alpha3 = Vec3::Zero();
  int clamp_events = 0;
};

/// z1 = eta - eta_d with the heading component wrapped to (-pi, pi].
Vec3 pose_tracking_error(const Vec3& eta, const Vec3& eta_d);

/// alpha1 = J(psi)^T (eta_d_dot - K1 z1).
Vec3 velocity_stabilizer(double psi, const Vec3& z1, const Vec3& eta_d_dot,
                         const Vec3& k1);

/// alpha2 = C(nu) nu + D(nu) nu + M alpha1_dot - K2 z2 - J(psi)^T z1 - b_hat.
Vec3 force_stabilizer(const VesselModel& model, const Vec3& nu, double psi,
                      const Vec3& z1, const Vec3& z2, const Vec3& alpha1_dot,
                      const Vec3& b_hat, const Vec3& k2);

/// Drive for the asymmetric stack,
///   tau_c = [Q(I-G_M) + (I-Q)(I-G_m)]^-1 (rho tau + alpha2_dot)
///           - K3 z3 - z2,
/// where the bracketed matrix is diagonal with the sign-selected gap 1 - g.
Vec3 asym_saturation_drive(const Vec3& z2, const Vec3& z3,
                           const Vec3& alpha2_dot, const Vec3& tau,
                           const AsymSatConfig& cfg, const Vec3& k3,
                           int* clamp_events = nullptr);

/// alpha3 = (I-G1)^-1 (rho1 (rate_max/tau_max) zeta + alpha2_dot
///           - K3 z3 - z2), with the per-axis bound ratio.
Vec3 rate_stage_stabilizer(const Vec3& z2, const Vec3& z3,
                           const Vec3& alpha2_dot, const Vec3& zeta,
                           const RateSatConfig& cfg, const Vec3& k3,
                           int* clamp_events = nullptr);

/// Drive for the magnitude+rate stack,
///   tau_d = (I-G2)^-1 [rho2 tau_c + alpha3_dot - K4 z4 - (I-G1) z3].
Vec3 rate_saturation_drive(const Vec3& z3, const Vec3& z4,
                           const Vec3& alpha3_dot, const Vec3& tau_c,
                           const Vec3& zeta, const RateSatConfig& cfg,
                           const Vec3& k4, int* clamp_events = nullptr);

/// First-order backward difference; zero until a previous sample exists.
Vec3 backward_difference(const Vec3& current, const Vec3& previous, double dt,
                         bool has_previous);

/// Full per-step controller. Keeps the previous stabilizer values so the
/// alpha derivatives come from backward differences at the control rate.
class BacksteppingController {
 public:
  BacksteppingController(Method method, const VesselModel& model,
                         const ControllerGains& gains,
                         const AsymSatConfig& asym, const RateSatConfig& rate,
                         double dt, SatStack baseline_stack = SatStack::Asym);

  /// Computes the step decision. `act` carries the saturation-model state
  /// (ignored by the baseline methods).
  ControlDecision step(const Vec3& eta, const Vec3& nu,
                       const ReferenceSample& ref, const Vec3& b_hat,
                       const ActuatorState& act);

  void reset();
  Method method() const { return method_; }
  long clamp_event_total() const { return clamp_total_; }

 private:
  Method method_;
  const VesselModel* model_;
  ControllerGains gains_;
  AsymSatConfig asym_;
  RateSatConfig rate_;
  double dt_;
  Vec3 clamp_lo_ = Vec3::Zero();  // ad-hoc clamp bounds
  Vec3 clamp_hi_ = Vec3::Zero();

  Vec3 alpha1_prev_ = Vec3::Zero();
  Vec3 alpha2_prev_ = Vec3::Zero();
  Vec3 alpha3_prev_ = Vec3::Zero();
  long step_count_ = 0;
  long clamp_total_ = 0;
};

}  // namespace usvctl
