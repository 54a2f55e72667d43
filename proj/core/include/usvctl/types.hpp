#pragma once

#include <Eigen/Dense>

#include <cmath>

namespace usvctl {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Wraps an angle to (-pi, pi].
inline double wrap_angle(double angle) {
  double wrapped = std::remainder(angle, 2.0 * M_PI);
  if (wrapped <= -M_PI) wrapped += 2.0 * M_PI;
  return wrapped;
}

/// x^n for an even exponent n >= 2.
inline double even_pow(double x, int n) {
  const double x2 = x * x;
  double out = x2;
  for (int k = 2; k < n; k += 2) out *= x2;
  return out;
}

}  // namespace usvctl
