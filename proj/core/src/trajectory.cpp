#include "usvctl/trajectory.hpp"

#include <cmath>

namespace usvctl {

TrajectoryConfig TrajectoryConfig::ellipse() {
  TrajectoryConfig cfg;
  cfg.kind = TrajectoryKind::Ellipse;
  cfg.amplitude = Vec3(4.0, 2.5, 0.02);
  cfg.omega = Vec3(0.02, 0.02, 0.02);
  return cfg;
}

TrajectoryConfig TrajectoryConfig::figure8() {
  TrajectoryConfig cfg;
  cfg.kind = TrajectoryKind::Figure8;
  cfg.amplitude = Vec3(4.0, 2.5, M_PI);
  cfg.omega = Vec3(0.05, 0.1, 0.02);
  return cfg;
}

Vec3 desired_body_velocity(const Vec3& eta_d, const Vec3& eta_d_dot) {
  const double c = std::cos(eta_d[2]);
  const double s = std::sin(eta_d[2]);
  return Vec3(c * eta_d_dot[0] + s * eta_d_dot[1],
              -s * eta_d_dot[0] + c * eta_d_dot[1], eta_d_dot[2]);
}

ReferenceSample sample_reference(const TrajectoryConfig& cfg, double t) {
  const Vec3& A = cfg.amplitude;
  const Vec3& w = cfg.omega;

  ReferenceSample out;
  switch (cfg.kind) {
    case TrajectoryKind::Ellipse:
      out.eta_d = Vec3(A[0] * std::sin(w[0] * t),
                       A[1] * (1.0 - std::cos(w[1] * t)),
                       A[2] * std::sin(w[2] * t));
      out.eta_d_dot = Vec3(A[0] * w[0] * std::cos(w[0] * t),
                           A[1] * w[1] * std::sin(w[1] * t),
                           A[2] * w[2] * std::cos(w[2] * t));
      out.eta_d_ddot = Vec3(-A[0] * w[0] * w[0] * std::sin(w[0] * t),
                            A[1] * w[1] * w[1] * std::cos(w[1] * t),
                            -A[2] * w[2] * w[2] * std::sin(w[2] * t));
      break;
    case TrajectoryKind::Figure8:
      out.eta_d = Vec3(A[0] * (std::cos(w[0] * t) - 1.0),
                       A[1] * std::sin(w[1] * t), A[2] * std::sin(w[2] * t));
      out.eta_d_dot = Vec3(-A[0] * w[0] * std::sin(w[0] * t),
                           A[1] * w[1] * std::cos(w[1] * t),
                           A[2] * w[2] * std::cos(w[2] * t));
      out.eta_d_ddot = Vec3(-A[0] * w[0] * w[0] * std::cos(w[0] * t),
                            -A[1] * w[1] * w[1] * std::sin(w[1] * t),
                            -A[2] * w[2] * w[2] * std::sin(w[2] * t));
      break;
  }
  out.nu_d = desired_body_velocity(out.eta_d, out.eta_d_dot);
  return out;
}

}  // namespace usvctl
