#include "usvctl/saturation.hpp"

#include <cmath>
#include <stdexcept>

namespace usvctl {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace

void AsymSatConfig::validate() const {
  require((tau_max.array() > 0.0).all(), "asym saturation: tau_max must be > 0");
  require((tau_min_mag.array() > 0.0).all(),
          "asym saturation: tau_min_mag must be > 0");
  require((rho.array() > 0.0).all(), "asym saturation: rho must be > 0");
  require(n >= 2 && n % 2 == 0, "asym saturation: n must be an even integer >= 2");
  require(drive_norm_bound > 0.0, "asym saturation: drive bound must be > 0");
}

void RateSatConfig::validate() const {
  require((tau_max.array() > 0.0).all(), "rate saturation: tau_max must be > 0");
  require((rate_max.array() > 0.0).all(), "rate saturation: rate_max must be > 0");
  require((rho1.array() > 0.0).all() && (rho1.array() < 1.0).all(),
          "rate saturation: rho1 must lie in (0, 1)");
  require((rho2.array() > 0.0).all(), "rate saturation: rho2 must be > 0");
  require(n >= 2 && n % 2 == 0, "rate saturation: n must be an even integer >= 2");
  require(drive_norm_bound > 0.0, "rate saturation: drive bound must be > 0");
}

double saturation_switch(double zeta_i) { return zeta_i > 0.0 ? 1.0 : 0.0; }

Vec3 asym_saturation_deriv(const Vec3& zeta, const Vec3& drive,
                           const AsymSatConfig& cfg) {
  Vec3 out;
  for (int i = 0; i < 3; ++i) {
    // Both branches coincide at zeta_i = 0, so the field is continuous there.
    const double bound =
        zeta[i] > 0.0 ? cfg.tau_max[i] : cfg.tau_min_mag[i];
    const double g = even_pow(zeta[i] / bound, cfg.n);
    out[i] = (1.0 - g) * drive[i] - cfg.rho[i] * zeta[i];
  }
  return out;
}

double asym_effective_upper_bound(const AsymSatConfig& cfg, int axis) {
  const double b = cfg.drive_norm_bound;
  return cfg.tau_max[axis] *
         std::pow(b / (b + cfg.rho[axis] * cfg.tau_max[axis]), 1.0 / cfg.n);
}

double asym_effective_lower_bound(const AsymSatConfig& cfg, int axis) {
  const double b = cfg.drive_norm_bound;
  return cfg.tau_min_mag[axis] *
         std::pow(b / (b + cfg.rho[axis] * cfg.tau_min_mag[axis]), 1.0 / cfg.n);
}

RateSatDeriv rate_saturation_deriv(const ActuatorState& state,
                                   const Vec3& drive,
                                   const RateSatConfig& cfg) {
  RateSatDeriv out;
  for (int i = 0; i < 3; ++i) {
    const double g1 = even_pow(state.zeta[i] / cfg.tau_max[i], cfg.n);
    out.zeta_dot[i] = (1.0 - g1) * state.tau_c[i] -
                      cfg.rho1[i] * (cfg.rate_max[i] / cfg.tau_max[i]) *
                          state.zeta[i];

    const double cap = (1.0 - cfg.rho1[i]) * cfg.rate_max[i];
    const double g2 = even_pow(state.tau_c[i] / cap, cfg.n);
    out.tau_c_dot[i] = (1.0 - g2) * drive[i] - cfg.rho2[i] * state.tau_c[i];
  }
  return out;
}

double rate_intermediate_bound(const RateSatConfig& cfg, int axis) {
  const double b = cfg.drive_norm_bound;
  const double cap = (1.0 - cfg.rho1[axis]) * cfg.rate_max[axis];
  return std::pow(b / (b + cfg.rho2[axis] * cap), 1.0 / cfg.n) * cap;
}

}  // namespace usvctl
