#pragma once

#include "usvctl/types.hpp"

namespace usvctl {

/// Injected body-frame disturbance b_i(t) = A_i sin(w_i t + phi_i) + c_i.
/// The rate of change is bounded by ||A .* w||.
struct DisturbanceSpec {
  Vec3 amplitude = Vec3(0.4, 0.4, 0.2);   // [N, N, N m]
  Vec3 omega = Vec3(0.05, 0.04, 0.03);    // [rad/s]
  Vec3 phase = Vec3::Zero();              // [rad]
  Vec3 offset = Vec3(0.2, 0.2, 0.1);      // [N, N, N m]

  Vec3 value(double t) const;
  Vec3 rate(double t) const;
  double rate_norm_bound() const;
};

}  // namespace usvctl
