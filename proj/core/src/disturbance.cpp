#include "usvctl/disturbance.hpp"

#include <cmath>

namespace usvctl {

Vec3 DisturbanceSpec::value(double t) const {
  Vec3 out;
  for (int i = 0; i < 3; ++i) {
    out[i] = amplitude[i] * std::sin(omega[i] * t + phase[i]) + offset[i];
  }
  return out;
}

Vec3 DisturbanceSpec::rate(double t) const {
  Vec3 out;
  for (int i = 0; i < 3; ++i) {
    out[i] = amplitude[i] * omega[i] * std::cos(omega[i] * t + phase[i]);
  }
  return out;
}

double DisturbanceSpec::rate_norm_bound() const {
  return amplitude.cwiseProduct(omega).norm();
}

}  // namespace usvctl
