#pragma once

#include "usvctl/types.hpp"
#include "usvctl/vessel.hpp"

namespace usvctl {

/// Disturbance estimate b_hat = z + K0 M nu. k0 holds the diagonal of the
/// positive-definite observer gain.
Vec3 disturbance_estimate(const Vec3& z, const Vec3& k0, const Mat3& mass,
                          const Vec3& nu);

/// Internal-state derivative
///   z_dot = -K0 z - K0 [tau - C(nu) nu - D(nu) nu + K0 M nu].
/// tau must be the actuation actually applied to the vessel.
Vec3 observer_state_deriv(const Vec3& z, const Vec3& k0,
                          const VesselModel& model, const Vec3& nu,
                          const Vec3& tau);

}  // namespace usvctl
