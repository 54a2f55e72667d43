#pragma once

#include "usvctl/types.hpp"

#include <string>

namespace usvctl {

/// Rigid-body and hydrodynamic coefficients of a 3-DOF surface vessel,
/// SNAME sign convention, SI units.
struct VesselParams {
  double m = 0.0;    // mass [kg]
  double I_z = 0.0;  // yaw inertia [kg m^2]
  double x_g = 0.0;  // CG offset along the body x axis [m]

  // Added mass
  double X_udot = 0.0;
  double Y_vdot = 0.0;
  double Y_rdot = 0.0;
  double N_vdot = 0.0;
  double N_rdot = 0.0;

  // Surge damping: linear, |u|u and cubic terms
  double X_u = 0.0;
  double X_uu = 0.0;   // X_|u|u
  double X_uuu = 0.0;

  // Sway damping
  double Y_v = 0.0;
  double Y_vv = 0.0;  // Y_|v|v
  double Y_rv = 0.0;  // Y_|r|v
  double Y_r = 0.0;
  double Y_vr = 0.0;  // Y_|v|r
  double Y_rr = 0.0;  // Y_|r|r

  // Yaw damping
  double N_v = 0.0;
  double N_vv = 0.0;  // N_|v|v
  double N_rv = 0.0;  // N_|r|v
  double N_r = 0.0;
  double N_vr = 0.0;  // N_|v|r
  double N_rr = 0.0;  // N_|r|r
};

/// CyberShip II model-scale coefficients.
VesselParams cybership2_params();

/// Parses a coefficient map keyed by SNAME names ("m", "I_z", "x_g",
/// "X_udot", "X_|u|u", ...). Missing keys default to zero; unknown keys
/// are rejected.
VesselParams vessel_params_from_json_text(const std::string& text);
std::string vessel_params_to_json_text(const VesselParams& p);

/// Planar rotation from body to Earth frame; J(psi)^T J(psi) = I, det = 1.
Mat3 rotation_matrix(double psi);

/// Inertia matrix (rigid body + added mass). Throws std::invalid_argument
/// when the result is not positive definite.
Mat3 mass_matrix(const VesselParams& p);

/// Coriolis/centripetal matrix; skew-symmetric for all nu.
Mat3 coriolis_matrix(const VesselParams& p, const Vec3& nu);

/// Hydrodynamic damping matrix. The optional cubic surge term
/// -X_uuu u^2 is off by default.
Mat3 damping_matrix(const VesselParams& p, const Vec3& nu,
                    bool cubic_surge = false);

/// eta_dot = J(psi) nu, with psi = eta[2].
Vec3 kinematics_deriv(const Vec3& eta, const Vec3& nu);

/// Vessel with the inertia matrix inverted once up front.
class VesselModel {
 public:
  explicit VesselModel(const VesselParams& p, bool cubic_surge_damping = false);

  const VesselParams& params() const { return params_; }
  const Mat3& mass() const { return mass_; }
  const Mat3& mass_inverse() const { return mass_inv_; }
  bool cubic_surge_damping() const { return cubic_surge_; }

  Mat3 coriolis(const Vec3& nu) const {
    return coriolis_matrix(params_, nu);
  }
  Mat3 damping(const Vec3& nu) const {
    return damping_matrix(params_, nu, cubic_surge_);
  }

  /// nu_dot = M^-1 [tau - C(nu) nu - D(nu) nu + b].
  Vec3 dynamics_deriv(const Vec3& nu, const Vec3& tau, const Vec3& b) const;

 private:
  VesselParams params_;
  bool cubic_surge_ = false;
  Mat3 mass_;
  Mat3 mass_inv_;
};

}  // namespace usvctl
