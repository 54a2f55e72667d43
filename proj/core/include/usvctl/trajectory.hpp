#pragma once

#include "usvctl/types.hpp"

namespace usvctl {

enum class TrajectoryKind { Ellipse, Figure8 };

/// Time-parameterized sinusoid reference. Components are
///   ellipse:  x = A0 sin(w0 t), y = A1 (1 - cos(w1 t)), psi = A2 sin(w2 t)
///   figure8:  x = A0 (cos(w0 t) - 1), y = A1 sin(w1 t), psi = A2 sin(w2 t)
struct TrajectoryConfig {
  TrajectoryKind kind = TrajectoryKind::Ellipse;
  Vec3 amplitude = Vec3::Zero();  // [m, m, rad]
  Vec3 omega = Vec3::Zero();      // [rad/s]

  static TrajectoryConfig ellipse();
  static TrajectoryConfig figure8();
};

struct ReferenceSample {
  Vec3 eta_d;       // desired pose [m, m, rad]
  Vec3 eta_d_dot;   // first derivative
  Vec3 eta_d_ddot;  // second derivative
  Vec3 nu_d;        // desired body rates, J(psi_d)^T eta_d_dot
};

/// Rotates an Earth-frame pose rate into the desired body frame.
Vec3 desired_body_velocity(const Vec3& eta_d, const Vec3& eta_d_dot);

/// Evaluates the reference and its analytic derivatives at time t.
ReferenceSample sample_reference(const TrajectoryConfig& cfg, double t);

}  // namespace usvctl
