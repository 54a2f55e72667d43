#pragma once

#include "usvctl/types.hpp"

namespace usvctl {

/// Smooth saturation model with asymmetric magnitude bounds. The model state
/// zeta is the actuation applied to the plant; the gain terms
/// (1 - (zeta/bound)^n) choke the drive as zeta approaches a bound, so the
/// bound is never crossed while ||drive|| stays within drive_norm_bound.
struct AsymSatConfig {
  Vec3 tau_max = Vec3(5.0, 4.5, 4.0);      // forward bounds [N, N, N m]
  Vec3 tau_min_mag = Vec3(4.0, 4.0, 3.0);  // reverse bound magnitudes (> 0)
  Vec3 rho = Vec3(0.5, 0.5, 0.5);          // decay constants [1/s]
  int n = 2;                               // even integer >= 2
  double drive_norm_bound = 100.0;         // assumed cap on ||tau_c||

  void validate() const;
};

/// Nested smooth saturation model bounding both the output magnitude
/// (|tau_i| <= tau_max_i) and its rate (|tau_dot_i| <= rate_max_i).
struct RateSatConfig {
  Vec3 tau_max = Vec3(5.0, 5.0, 5.0);   // magnitude bounds [N, N, N m]
  Vec3 rate_max = Vec3(4.0, 4.0, 4.0);  // rate bounds [N/s, N/s, N m/s]
  Vec3 rho1 = Vec3(0.2, 0.2, 0.2);      // each in (0, 1)
  Vec3 rho2 = Vec3(2.0, 2.0, 2.0);      // each > 0
  int n = 2;
  // Assumed cap on ||tau_d||. Sized to cover the drive the backstepping
  // stack actually produces during the stock start-point transients.
  double drive_norm_bound = 500.0;

  void validate() const;
};

/// Saturation-model state. zeta doubles as the model output tau; tau_c is
/// the intermediate state of the magnitude+rate model only.
struct ActuatorState {
  Vec3 zeta = Vec3::Zero();
  Vec3 tau_c = Vec3::Zero();
};

/// Branch selector for the asymmetric bounds: 1 for zeta_i > 0, else 0.
double saturation_switch(double zeta_i);

/// zeta_dot for the asymmetric model,
///   zeta_dot_i = q_i (1 - (zeta_i/tau_max_i)^n) drive_i - rho_i zeta_i
///              + (1 - q_i)(1 - (zeta_i/tau_min_mag_i)^n) drive_i.
Vec3 asym_saturation_deriv(const Vec3& zeta, const Vec3& drive,
                           const AsymSatConfig& cfg);

/// Tight forward bound the model provably never exceeds under bounded drive:
///   tau_max_i [B/(B + rho_i tau_max_i)]^(1/n), B = drive_norm_bound.
double asym_effective_upper_bound(const AsymSatConfig& cfg, int axis);

/// Mirror of the forward bound for the reverse direction,
///   tau_min_mag_i [B/(B + rho_i tau_min_mag_i)]^(1/n).
double asym_effective_lower_bound(const AsymSatConfig& cfg, int axis);

struct RateSatDeriv {
  Vec3 zeta_dot;
  Vec3 tau_c_dot;
};

/// Derivatives of the magnitude+rate model,
///   zeta_dot_i  = (1 - (zeta_i/tau_max_i)^n) tau_c_i
///                 - rho1_i (rate_max_i/tau_max_i) zeta_i,
///   tau_c_dot_i = (1 - (tau_c_i/((1-rho1_i) rate_max_i))^n) drive_i
///                 - rho2_i tau_c_i.
RateSatDeriv rate_saturation_deriv(const ActuatorState& state,
                                   const Vec3& drive,
                                   const RateSatConfig& cfg);

/// Bound on the intermediate state tau_c_i under bounded drive:
///   [B/(B + rho2_i (1-rho1_i) rate_max_i)]^(1/n) (1-rho1_i) rate_max_i.
double rate_intermediate_bound(const RateSatConfig& cfg, int axis);

}  // namespace usvctl
