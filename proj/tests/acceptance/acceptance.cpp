// Acceptance suite: drives the full stack through the shipped scenarios
// and checks the guarantees the controllers are supposed to deliver. Each
// criterion prints one PASS/FAIL line; the exit code is the failure count.

#include "usvctl/controller.hpp"
#include "usvctl/metrics.hpp"
#include "usvctl/observer.hpp"
#include "usvctl/saturation_check.hpp"
#include "usvctl/scenario.hpp"
#include "usvctl/sim.hpp"
#include "usvctl/trace_io.hpp"

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

using namespace usvctl;

namespace {

int g_failures = 0;

void report(int index, const std::string& what, bool pass,
            const std::string& detail) {
  std::printf("[%s] criterion %d: %s — %s\n", pass ? "PASS" : "FAIL", index,
              what.c_str(), detail.c_str());
  if (!pass) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

std::string fmt(const char* pattern, ...) {
  char buf[512];
  va_list args;
  va_start(args, pattern);
  std::vsnprintf(buf, sizeof(buf), pattern, args);
  va_end(args);
  return buf;
}

// ---------------------------------------------------------------------------
// Criterion 1: asymmetric-model effective bounds under 1e4 random drives.

void criterion_1() {
  const auto t0 = std::chrono::steady_clock::now();
  AsymSatConfig cfg;  // stock bounds: tau_M (5,4.5,4), tau_m (4,4,3)
  const AsymCheckReport rep =
      check_asym_bounds(cfg, 10000, 100.0, 1e-3, 20240601u);
  const double wall = seconds_since(t0);
  const bool pass = rep.pass && wall < 60.0;
  report(1, "asymmetric saturation bound suite (1e4 signals)", pass,
         fmt("max zeta [%.6f %.6f %.6f] vs [%.6f %.6f %.6f], "
             "min zeta [%.6f %.6f %.6f] vs [%.6f %.6f %.6f], %.1fs",
             rep.zeta_max[0], rep.zeta_max[1], rep.zeta_max[2],
             rep.bound_upper[0], rep.bound_upper[1], rep.bound_upper[2],
             rep.zeta_min[0], rep.zeta_min[1], rep.zeta_min[2],
             rep.bound_lower[0], rep.bound_lower[1], rep.bound_lower[2],
             wall));
}

// ---------------------------------------------------------------------------
// Criterion 2: magnitude+rate model under worst-case constant drive.

void criterion_2() {
  const auto t0 = std::chrono::steady_clock::now();
  RateSatConfig cfg;
  const RateCheckReport rep = check_rate_bounds_worstcase(cfg, 100.0, 1e-3);
  const double wall = seconds_since(t0);
  const bool pass = rep.pass && wall < 10.0;
  report(2, "magnitude+rate saturation bound suite (worst-case drive)", pass,
         fmt("max |zeta| %.6f <= %.1f, max |tau_c| %.6f <= %.6f, "
             "max |zeta_dot| %.6f <= %.1f, %.1fs",
             rep.zeta_abs_max.maxCoeff(), cfg.tau_max[0],
             rep.tau_c_abs_max.maxCoeff(), rep.tau_c_bound.minCoeff(),
             rep.zeta_dot_abs_max.maxCoeff(), cfg.rate_max[0], wall));
}

// ---------------------------------------------------------------------------
// Criterion 3: elliptical tracking from P1/P2/P3 with the asymmetric stack.

struct TrackingOutcome {
  RunResult run;
  double tail_err_max = 0.0;
  double wall = 0.0;
  long violations = 0;
  bool strict_interior = true;
};

TrackingOutcome run_tracking(const ScenarioConfig& cfg, double transient_s) {
  const auto t0 = std::chrono::steady_clock::now();
  TrackingOutcome out;
  out.run = run_scenario(cfg);
  out.wall = seconds_since(t0);

  const Vec3 lo = cfg.method == Method::ProposedMagrate
                      ? Vec3(-cfg.magrate.tau_max)
                      : Vec3(-cfg.asym.tau_min_mag);
  const Vec3 hi = cfg.method == Method::ProposedMagrate ? cfg.magrate.tau_max
                                                        : cfg.asym.tau_max;
  for (const SimRecord& r : out.run.records) {
    if (r.t >= transient_s) {
      out.tail_err_max = std::max(out.tail_err_max, r.z1.norm());
    }
    for (int a = 0; a < 3; ++a) {
      if (!(r.tau[a] < hi[a]) || !(r.tau[a] > lo[a])) {
        out.strict_interior = false;
      }
    }
  }
  out.violations = compute_metrics(out.run.records, cfg)
                       .constraint_violation_count;
  return out;
}

void criterion_3() {
  const Vec3 starts[] = {Vec3(-1, 0, 0.01), Vec3(1, -1, 0.01),
                         Vec3(-1, 1, 0.01)};
  bool pass = true;
  std::string detail;
  for (int i = 0; i < 3; ++i) {
    ScenarioConfig cfg =
        default_scenario(Method::ProposedAsym, TrajectoryKind::Ellipse);
    cfg.eta0 = starts[i];
    const TrackingOutcome out = run_tracking(cfg, 200.0);
    const bool ok = !out.run.aborted && out.run.drive_bound_ok &&
                    out.tail_err_max < 0.05 && out.violations == 0 &&
                    out.strict_interior && out.wall < 30.0;
    pass = pass && ok;
    detail += fmt("P%d max||z1||=%.4f viol=%ld %.1fs%s ", i + 1,
                  out.tail_err_max, out.violations, out.wall,
                  ok ? "" : " <-FAIL");
  }
  report(3, "elliptical tracking, asymmetric stack (P1/P2/P3)", pass, detail);
}

// ---------------------------------------------------------------------------
// Criterion 4: figure-8 tracking with the magnitude+rate stack.

void criterion_4() {
  const Vec3 starts[] = {Vec3(-1, 0, 0.01), Vec3(1, -1, 0.01),
                         Vec3(-1, 1, 0.01)};
  bool pass = true;
  std::string detail;
  for (int i = 0; i < 3; ++i) {
    ScenarioConfig cfg =
        default_scenario(Method::ProposedMagrate, TrajectoryKind::Figure8);
    cfg.eta0 = starts[i];
    const TrackingOutcome out = run_tracking(cfg, 200.0);

    double rate_max = 0.0;
    bool rate_ok = true;
    for (const SimRecord& r : out.run.records) {
      for (int a = 0; a < 3; ++a) {
        rate_max = std::max(rate_max, std::abs(r.tau_rate[a]));
        if (std::abs(r.tau_rate[a]) > cfg.magrate.rate_max[a] + 1e-3) {
          rate_ok = false;
        }
      }
    }
    const bool ok = !out.run.aborted && out.run.drive_bound_ok &&
                    out.tail_err_max < 0.05 && out.violations == 0 &&
                    rate_ok && out.wall < 30.0;
    pass = pass && ok;
    detail += fmt("P%d max||z1||=%.4f max|dtau|=%.3f viol=%ld%s ", i + 1,
                  out.tail_err_max, rate_max, out.violations,
                  ok ? "" : " <-FAIL");
  }
  report(4, "figure-8 tracking, magnitude+rate stack (P1/P2/P3)", pass,
         detail);
}

// ---------------------------------------------------------------------------
// Criterion 5: ordering of the three methods on the figure-8.

void criterion_5() {
  ScenarioConfig base =
      default_scenario(Method::ProposedAsym, TrajectoryKind::Figure8);

  ScenarioConfig unbounded = base;
  unbounded.method = Method::Unbounded;
  ScenarioConfig adhoc = base;
  adhoc.method = Method::Adhoc;

  const RunResult run_p = run_scenario(base);
  const RunResult run_u = run_scenario(unbounded);
  const RunResult run_a = run_scenario(adhoc);

  const RunMetrics m_p = compute_metrics(run_p.records, base);
  const RunMetrics m_u = compute_metrics(run_u.records, unbounded);
  const RunMetrics m_a = compute_metrics(run_a.records, adhoc);

  const double sway_bound = base.asym.tau_max[1];
  const bool demand_blowup = m_u.max_abs_tau[1] >= 2.0 * sway_bound;
  const bool heading_degrades = m_a.rmse_heading >= 2.0 * m_p.rmse_heading;
  const bool proposed_clean = m_p.constraint_violation_count == 0 &&
                              !run_p.aborted && run_p.drive_bound_ok;
  const bool pass = demand_blowup && heading_degrades && proposed_clean;
  report(5, "method comparison on the figure-8 (P1)", pass,
         fmt("unbounded peak|tau2| %.2f (>= %.1f), heading RMSE adhoc %.4f vs "
             "proposed %.4f (ratio %.1f), proposed violations %ld",
             m_u.max_abs_tau[1], 2.0 * sway_bound, m_a.rmse_heading,
             m_p.rmse_heading, m_a.rmse_heading / m_p.rmse_heading,
             m_p.constraint_violation_count));
}

// ---------------------------------------------------------------------------
// Criterion 6: observer error envelope against exp(-k0 t).

void criterion_6() {
  const double k0 = 10.0;
  ScenarioConfig cfg =
      default_scenario(Method::ProposedAsym, TrajectoryKind::Ellipse);
  cfg.observer_gain = Vec3(k0, k0, k0);
  cfg.disturbance.amplitude = Vec3::Zero();
  cfg.disturbance.offset = Vec3(0.2, 0.2, 0.1);
  cfg.duration = 2.0;

  const RunResult run = run_scenario(cfg);
  const double window = 5.0 / k0;

  bool pass = !run.aborted;
  Vec3 slopes = Vec3::Zero();
  for (int a = 0; a < 3; ++a) {
    // Least-squares slope of ln|b_e| over the first 5/k0 seconds.
    double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
    long n = 0;
    for (const SimRecord& r : run.records) {
      if (r.t > window) break;
      const double err = std::abs(r.b[a] - r.b_hat[a]);
      if (err <= 0.0) continue;
      const double y = std::log(err);
      st += r.t;
      sy += y;
      stt += r.t * r.t;
      sty += r.t * y;
      ++n;
    }
    const double slope = (n * sty - st * sy) / (n * stt - st * st);
    slopes[a] = slope;
    if (!(slope <= -k0 / 1.1 && slope >= -k0 * 1.1)) pass = false;
  }
  report(6, "observer error envelope matches exp(-k0 t)", pass,
         fmt("fitted exponents [%.3f %.3f %.3f], admissible [%.2f, %.2f]",
             slopes[0], slopes[1], slopes[2], -k0 * 1.1, -k0 / 1.1));
}

// ---------------------------------------------------------------------------
// Criterion 7: Lyapunov descent outside the residual band.

struct DescentOutcome {
  long checked = 0;
  long violations = 0;
  double band = 0.0;
  std::string events;
};

DescentOutcome check_descent(const std::vector<SimRecord>& records,
                             double skip_s) {
  DescentOutcome out;
  // Residual band: twice the largest V seen over the second half of the
  // run, which samples the full spread of the steady residual oscillation.
  double tail_max = 0.0;
  for (size_t i = records.size() / 2; i < records.size(); ++i) {
    tail_max = std::max(tail_max, records[i].lyapunov);
  }
  out.band = 2.0 * tail_max + 1e-12;

  for (size_t i = 0; i + 1 < records.size(); ++i) {
    if (records[i].t < skip_s) continue;
    const double v = records[i].lyapunov;
    if (v <= out.band) continue;
    ++out.checked;
    const double dv = records[i + 1].lyapunov - v;
    if (dv > 1e-6 * v + 1e-12) {
      ++out.violations;
      if (out.violations <= 4) {
        out.events += fmt("{t=%.2f dV/V=%.1e} ", records[i].t, dv / v);
      }
    }
  }
  return out;
}

void criterion_7() {
  ScenarioConfig asym_cfg =
      default_scenario(Method::ProposedAsym, TrajectoryKind::Ellipse);
  const RunResult asym_run = run_scenario(asym_cfg);
  const DescentOutcome v3 = check_descent(asym_run.records, 5.0);

  ScenarioConfig rate_cfg =
      default_scenario(Method::ProposedMagrate, TrajectoryKind::Figure8);
  const RunResult rate_run = run_scenario(rate_cfg);
  const DescentOutcome v4 = check_descent(rate_run.records, 5.0);

  const bool pass = !asym_run.aborted && !rate_run.aborted &&
                    v3.violations == 0 && v4.violations == 0 &&
                    v3.checked > 0 && v4.checked > 0;
  report(7, "Lyapunov descent outside the residual band", pass,
         fmt("V3: %ld steps above band %.3g, %ld ascents %s; "
             "V4: %ld steps above band %.3g, %ld ascents %s",
             v3.checked, v3.band, v3.violations, v3.events.c_str(),
             v4.checked, v4.band, v4.violations, v4.events.c_str()));
}

// ---------------------------------------------------------------------------
// Criterion 8: numerics — RK4 order, analytic derivatives, determinism.

// Plant + observer + asymmetric saturation under a smooth open-loop drive
// derived from the elliptical feedforward. The closed-loop controller uses
// backward differences (first-order by construction), so the integration
// order is measured on this smooth variant of the ellipse scenario.
// Returns the state at every multiple of grid_dt.
std::vector<Eigen::Matrix<double, 12, 1>> integrate_smooth_stack(
    double dt, double t_end, double grid_dt) {
  const VesselModel model(cybership2_params());
  const TrajectoryConfig traj = TrajectoryConfig::ellipse();
  const DisturbanceSpec dist;  // defaults: smooth sinusoid
  const Vec3 k0(10, 10, 10);
  const AsymSatConfig sat;
  const Vec3 bias(2.0, 1.5, 1.0);  // keeps zeta away from the branch switch

  auto drive_at = [&](double t) {
    const ReferenceSample s = sample_reference(traj, t);
    const double c = std::cos(s.eta_d[2]);
    const double sn = std::sin(s.eta_d[2]);
    Mat3 jt, djt;
    jt << c, sn, 0, -sn, c, 0, 0, 0, 1;
    djt << -sn, c, 0, -c, -sn, 0, 0, 0, 0;
    const Vec3 nu_d = jt * s.eta_d_dot;
    const Vec3 nu_d_dot = s.eta_d_dot[2] * (djt * s.eta_d_dot) +
                          jt * s.eta_d_ddot;
    return Vec3(model.mass() * nu_d_dot + model.coriolis(nu_d) * nu_d +
                model.damping(nu_d) * nu_d + bias);
  };

  using State = Eigen::Matrix<double, 12, 1>;
  State y = State::Zero();
  // Interior starting velocity: the damping terms carry |u|, |v|, |r|
  // factors, so a start at rest would park the study on their kinks.
  y.segment<3>(3) = Vec3(0.3, 0.1, 0.05);
  auto deriv = [&](double t, const State& s) {
    State out;
    const Vec3 nu = s.segment<3>(3);
    const Vec3 zeta = s.segment<3>(9);
    const Vec3 b = dist.value(t);
    out.segment<3>(0) = kinematics_deriv(s.segment<3>(0), nu);
    out.segment<3>(3) = model.dynamics_deriv(nu, zeta, b);
    out.segment<3>(6) =
        observer_state_deriv(s.segment<3>(6), k0, model, nu, zeta);
    out.segment<3>(9) = asym_saturation_deriv(zeta, drive_at(t), sat);
    return out;
  };

  const long steps = std::lround(t_end / dt);
  const long stride = std::lround(grid_dt / dt);
  std::vector<State> grid;
  grid.reserve(steps / stride + 1);
  grid.push_back(y);
  for (long k = 0; k < steps; ++k) {
    y = rk4_step(k * dt, y, dt, deriv);
    if ((k + 1) % stride == 0) grid.push_back(y);
  }
  return grid;
}

void criterion_8() {
  // (a) Global order of the RK4 integrator on the smooth ellipse stack:
  // worst state error against a fine-step reference over a 10 s horizon.
  const double t_end = 10.0;
  const double grid_dt = 0.04;
  const auto ref = integrate_smooth_stack(5e-4, t_end, grid_dt);
  const std::vector<double> dts = {0.04, 0.02, 0.01, 0.005};
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::string errs;
  for (double dt : dts) {
    const auto grid = integrate_smooth_stack(dt, t_end, grid_dt);
    double err = 0.0;
    for (size_t i = 0; i < grid.size(); ++i) {
      err = std::max(err, (grid[i] - ref[i]).norm());
    }
    const double lx = std::log(dt);
    const double ly = std::log(err);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    errs += fmt("%.2e ", err);
  }
  const double n = static_cast<double>(dts.size());
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const bool order_ok = slope >= 3.7 && slope <= 4.3;

  // (b) Analytic trajectory derivatives against central differences.
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> ts(1.0, 2000.0);
  double deriv_err = 0.0;
  const double h = 1e-4;
  for (const auto& cfg :
       {TrajectoryConfig::ellipse(), TrajectoryConfig::figure8()}) {
    for (int i = 0; i < 100; ++i) {
      const double t = ts(rng);
      const Vec3 numeric = (sample_reference(cfg, t + h).eta_d -
                            sample_reference(cfg, t - h).eta_d) /
                           (2.0 * h);
      deriv_err = std::max(
          deriv_err,
          (sample_reference(cfg, t).eta_d_dot - numeric).cwiseAbs().maxCoeff());
    }
  }
  const bool deriv_ok = deriv_err < 1e-6;

  // (c) Determinism: identical configs, bit-identical traces.
  ScenarioConfig cfg =
      default_scenario(Method::ProposedAsym, TrajectoryKind::Ellipse);
  cfg.duration = 50.0;
  const std::string csv_a = trace_to_csv_text(run_scenario(cfg).records);
  const std::string csv_b = trace_to_csv_text(run_scenario(cfg).records);
  const bool deterministic = csv_a == csv_b;

  const bool pass = order_ok && deriv_ok && deterministic;
  report(8, "numerics: RK4 order, analytic derivatives, determinism", pass,
         fmt("order slope %.3f (errors %s), max derivative mismatch %.2e, "
             "bit-identical traces: %s",
             slope, errs.c_str(), deriv_err, deterministic ? "yes" : "no"));
}

}  // namespace

int main() {
  std::printf("acceptance suite: USV tracking under actuator constraints\n");
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  if (g_failures == 0) {
    std::printf("all criteria passed\n");
  } else {
    std::printf("%d criterion(s) failed\n", g_failures);
  }
  return g_failures;
}
