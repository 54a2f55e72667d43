#include "usvctl/observer.hpp"

namespace usvctl {

Vec3 disturbance_estimate(const Vec3& z, const Vec3& k0, const Mat3& mass,
                          const Vec3& nu) {
  return z + k0.cwiseProduct(mass * nu);
}

Vec3 observer_state_deriv(const Vec3& z, const Vec3& k0,
                          const VesselModel& model, const Vec3& nu,
                          const Vec3& tau) {
  const Vec3 coupling = tau - model.coriolis(nu) * nu - model.damping(nu) * nu +
                        k0.cwiseProduct(model.mass() * nu);
  return -k0.cwiseProduct(z) - k0.cwiseProduct(coupling);
}

}  // namespace usvctl
