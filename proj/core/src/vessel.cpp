#include "usvctl/vessel.hpp"

#include <json.hpp>

#include <cmath>
#include <stdexcept>

namespace usvctl {

namespace {

// Condition-number gate for the precomputed inverse; constant per run.
constexpr double kMaxConditionNumber = 1e10;

struct MassEntries {
  double m11, m22, m23, m32, m33;
};

MassEntries mass_entries(const VesselParams& p) {
  return {
      p.m - p.X_udot,
      p.m - p.Y_vdot,
      p.m * p.x_g - p.Y_rdot,
      p.m * p.x_g - p.N_vdot,
      p.I_z - p.N_rdot,
  };
}

}  // namespace

VesselParams cybership2_params() {
  VesselParams p;
  p.m = 23.800;  // [kg]
  p.I_z = 1.760; // [kg m^2]
  p.x_g = 0.046; // [m]

  p.X_udot = -2.0;
  p.Y_vdot = -10.0;
  p.Y_rdot = -0.0;
  p.N_vdot = -0.0;
  p.N_rdot = -0.0;

  p.X_u = -0.72253;
  p.X_uu = -1.32742;
  p.X_uuu = -5.86643;

  p.Y_v = -2.0;
  p.Y_vv = -36.47287;
  p.Y_rv = -0.805;
  p.Y_r = -7.250;
  p.Y_vr = -0.845;
  p.Y_rr = -3.450;

  p.N_v = 0.03130;
  p.N_vv = 3.95645;
  p.N_rv = 0.130;
  p.N_r = -1.900;
  p.N_vr = 0.080;
  p.N_rr = -0.750;
  return p;
}

VesselParams vessel_params_from_json_text(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  if (!j.is_object()) {
    throw std::invalid_argument("vessel parameters: expected a JSON object");
  }

  VesselParams p;
  const std::pair<const char*, double VesselParams::*> keys[] = {
      {"m", &VesselParams::m},
      {"I_z", &VesselParams::I_z},
      {"x_g", &VesselParams::x_g},
      {"X_udot", &VesselParams::X_udot},
      {"Y_vdot", &VesselParams::Y_vdot},
      {"Y_rdot", &VesselParams::Y_rdot},
      {"N_vdot", &VesselParams::N_vdot},
      {"N_rdot", &VesselParams::N_rdot},
      {"X_u", &VesselParams::X_u},
      {"X_|u|u", &VesselParams::X_uu},
      {"X_uuu", &VesselParams::X_uuu},
      {"Y_v", &VesselParams::Y_v},
      {"Y_|v|v", &VesselParams::Y_vv},
      {"Y_|r|v", &VesselParams::Y_rv},
      {"Y_r", &VesselParams::Y_r},
      {"Y_|v|r", &VesselParams::Y_vr},
      {"Y_|r|r", &VesselParams::Y_rr},
      {"N_v", &VesselParams::N_v},
      {"N_|v|v", &VesselParams::N_vv},
      {"N_|r|v", &VesselParams::N_rv},
      {"N_r", &VesselParams::N_r},
      {"N_|v|r", &VesselParams::N_vr},
      {"N_|r|r", &VesselParams::N_rr},
  };

  for (const auto& item : j.items()) {
    bool known = false;
    for (const auto& [name, member] : keys) {
      if (item.key() == name) {
        p.*member = item.value().get<double>();
        known = true;
        break;
      }
    }
    if (!known) {
      throw std::invalid_argument("vessel parameters: unknown coefficient '" +
                                  item.key() + "'");
    }
  }
  return p;
}

std::string vessel_params_to_json_text(const VesselParams& p) {
  nlohmann::ordered_json j;
  j["m"] = p.m;
  j["I_z"] = p.I_z;
  j["x_g"] = p.x_g;
  j["X_udot"] = p.X_udot;
  j["Y_vdot"] = p.Y_vdot;
  j["Y_rdot"] = p.Y_rdot;
  j["N_vdot"] = p.N_vdot;
  j["N_rdot"] = p.N_rdot;
  j["X_u"] = p.X_u;
  j["X_|u|u"] = p.X_uu;
  j["X_uuu"] = p.X_uuu;
  j["Y_v"] = p.Y_v;
  j["Y_|v|v"] = p.Y_vv;
  j["Y_|r|v"] = p.Y_rv;
  j["Y_r"] = p.Y_r;
  j["Y_|v|r"] = p.Y_vr;
  j["Y_|r|r"] = p.Y_rr;
  j["N_v"] = p.N_v;
  j["N_|v|v"] = p.N_vv;
  j["N_|r|v"] = p.N_rv;
  j["N_r"] = p.N_r;
  j["N_|v|r"] = p.N_vr;
  j["N_|r|r"] = p.N_rr;
  return j.dump(2);
}

Mat3 rotation_matrix(double psi) {
  const double c = std::cos(psi);
  const double s = std::sin(psi);
  Mat3 J;
  // clang-format off
  J << c, -s, 0.0,
       s,  c, 0.0,
       0.0, 0.0, 1.0;
  // clang-format on
  return J;
}

Mat3 mass_matrix(const VesselParams& p) {
  const auto e = mass_entries(p);
  // Leading principal minors of the symmetric part must all be positive.
  const double minor1 = e.m11;
  const double minor2 = e.m11 * e.m22;
  const double minor3 = e.m11 * (e.m22 * e.m33 - e.m23 * e.m32);
  if (!(p.m > 0.0) || !(p.I_z > 0.0) || !(minor1 > 0.0) || !(minor2 > 0.0) ||
      !(minor3 > 0.0)) {
    throw std::invalid_argument(
        "vessel parameters yield a non-positive-definite inertia matrix");
  }

  Mat3 M;
  // clang-format off
  M << e.m11, 0.0,   0.0,
       0.0,   e.m22, e.m23,
       0.0,   e.m32, e.m33;
  // clang-format on
  return M;
}

Mat3 coriolis_matrix(const VesselParams& p, const Vec3& nu) {
  const auto e = mass_entries(p);
  const double u = nu[0];
  const double v = nu[1];
  const double r = nu[2];

  const double c13 = -e.m22 * v - e.m23 * r;
  const double c23 = e.m11 * u;

  Mat3 C;
  // clang-format off
  C << 0.0,  0.0,  c13,
       0.0,  0.0,  c23,
      -c13, -c23,  0.0;
  // clang-format on
  return C;
}

Mat3 damping_matrix(const VesselParams& p, const Vec3& nu, bool cubic_surge) {
  const double u = nu[0];
  const double v = nu[1];
  const double r = nu[2];
  const double au = std::abs(u);
  const double av = std::abs(v);
  const double ar = std::abs(r);

  double d11 = -p.X_u - p.X_uu * au;
  if (cubic_surge) d11 -= p.X_uuu * u * u;
  const double d22 = -p.Y_v - p.Y_vv * av - p.Y_rv * ar;
  const double d23 = -p.Y_r - p.Y_vr * av - p.Y_rr * ar;
  const double d32 = -p.N_v - p.N_vv * av - p.N_rv * ar;
  const double d33 = -p.N_r - p.N_vr * av - p.N_rr * ar;

  Mat3 D;
  // clang-format off
  D << d11, 0.0, 0.0,
       0.0, d22, d23,
       0.0, d32, d33;
  // clang-format on
  return D;
}

Vec3 kinematics_deriv(const Vec3& eta, const Vec3& nu) {
  return rotation_matrix(eta[2]) * nu;
}

VesselModel::VesselModel(const VesselParams& p, bool cubic_surge_damping)
    : params_(p), cubic_surge_(cubic_surge_damping), mass_(mass_matrix(p)) {
  // Closed-form cofactor inverse; M is constant for the whole run.
  const double det = mass_(0, 0) * (mass_(1, 1) * mass_(2, 2) -
                                    mass_(1, 2) * mass_(2, 1));
  Mat3 inv;
  // clang-format off
  inv << mass_(1, 1) * mass_(2, 2) - mass_(1, 2) * mass_(2, 1), 0.0, 0.0,
         0.0,  mass_(0, 0) * mass_(2, 2), -mass_(0, 0) * mass_(1, 2),
         0.0, -mass_(0, 0) * mass_(2, 1),  mass_(0, 0) * mass_(1, 1);
  // clang-format on
  mass_inv_ = inv / det;

  const double cond = mass_.cwiseAbs().rowwise().sum().maxCoeff() *
                      mass_inv_.cwiseAbs().rowwise().sum().maxCoeff();
  if (!(cond < kMaxConditionNumber)) {
    throw std::invalid_argument("inertia matrix is near singular (cond > 1e10)");
  }
}

Vec3 VesselModel::dynamics_deriv(const Vec3& nu, const Vec3& tau,
                                 const Vec3& b) const {
  const Vec3 rhs = tau - coriolis(nu) * nu - damping(nu) * nu + b;
  return mass_inv_ * rhs;
}

}  // namespace usvctl
