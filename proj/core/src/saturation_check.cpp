#include "usvctl/saturation_check.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <thread>
#include <vector>

namespace usvctl {

namespace {

constexpr int kLanes = 8;  // signals advanced together per block

double elapsed_seconds(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

std::uint64_t signal_seed(std::uint64_t base, long index) {
  return base ^ (0x9E3779B97F4A7C15ull * static_cast<std::uint64_t>(index + 1));
}

// Piecewise-constant drive generator. Half of the segments sit exactly on
// the norm shell ||u|| = bound (the worst case for the theorems), split
// between axis-aligned and random directions.
class SegmentDrive {
 public:
  SegmentDrive(std::uint64_t seed, double norm_bound)
      : rng_(seed), norm_bound_(norm_bound) {}

  // Fills u[0..2] and returns the number of steps to hold it.
  int next_segment(double* u) {
    std::uniform_int_distribution<int> hold(100, 5000);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    const double mag =
        unit(rng_) < 0.5 ? norm_bound_ : norm_bound_ * unit(rng_);
    if (unit(rng_) < 0.5) {
      const int axis = std::uniform_int_distribution<int>(0, 2)(rng_);
      const double sign = unit(rng_) < 0.5 ? 1.0 : -1.0;
      u[0] = u[1] = u[2] = 0.0;
      u[axis] = sign * mag;
    } else {
      std::normal_distribution<double> gauss(0.0, 1.0);
      double d0 = gauss(rng_), d1 = gauss(rng_), d2 = gauss(rng_);
      double norm = std::sqrt(d0 * d0 + d1 * d1 + d2 * d2);
      if (norm < 1e-12) {
        d0 = 1.0;
        d1 = d2 = 0.0;
        norm = 1.0;
      }
      u[0] = mag * d0 / norm;
      u[1] = mag * d1 / norm;
      u[2] = mag * d2 / norm;
    }
    return hold(rng_);
  }

 private:
  std::mt19937_64 rng_;
  double norm_bound_;
};

struct AsymExtrema {
  double zmax[3];
  double zmin[3];
  AsymExtrema() {
    for (int a = 0; a < 3; ++a) zmax[a] = zmin[a] = 0.0;
  }
  void merge(const AsymExtrema& other) {
    for (int a = 0; a < 3; ++a) {
      zmax[a] = std::max(zmax[a], other.zmax[a]);
      zmin[a] = std::min(zmin[a], other.zmin[a]);
    }
  }
};

// Advances one block of kLanes asymmetric-model signals over all steps.
// The per-axis bound is selected by sign, so the loop body is branch-free
// and vectorizes across lanes.
template <int N>
void run_asym_block(const AsymSatConfig& cfg, long active_lanes, long steps,
                    double dt, std::uint64_t base_seed, long first_signal,
                    AsymExtrema& ext) {
  double zeta[3][kLanes];
  double drive[3][kLanes];
  int hold[kLanes];

  std::vector<SegmentDrive> gen;
  gen.reserve(kLanes);
  for (int l = 0; l < kLanes; ++l) {
    gen.emplace_back(signal_seed(base_seed, first_signal + l),
                     cfg.drive_norm_bound);
    hold[l] = 0;
    for (int a = 0; a < 3; ++a) {
      zeta[a][l] = 0.0;
      drive[a][l] = 0.0;
    }
  }

  double up_inv[3], dn_inv[3], rho[3];
  for (int a = 0; a < 3; ++a) {
    up_inv[a] = 1.0 / cfg.tau_max[a];
    dn_inv[a] = 1.0 / cfg.tau_min_mag[a];
    rho[a] = cfg.rho[a];
  }

  const double half_dt = 0.5 * dt;
  const double sixth_dt = dt / 6.0;

  const int n_rt = cfg.n;
  auto gpow = [&](double x) {
    if constexpr (N == 2) {
      return x * x;
    } else {
      return even_pow(x, n_rt);
    }
  };

  for (long step = 0; step < steps; ++step) {
    for (int l = 0; l < static_cast<int>(active_lanes); ++l) {
      if (hold[l] == 0) {
        double u[3];
        hold[l] = gen[l].next_segment(u);
        drive[0][l] = u[0];
        drive[1][l] = u[1];
        drive[2][l] = u[2];
      }
      --hold[l];
    }

    for (int a = 0; a < 3; ++a) {
      const double iu = up_inv[a];
      const double id = dn_inv[a];
      const double r = rho[a];
      double* z = zeta[a];
      const double* u = drive[a];
      for (int l = 0; l < kLanes; ++l) {
        const double z0 = z[l];
        const double ul = u[l];
        auto f = [&](double x) {
          const double inv = x > 0.0 ? iu : id;
          return (1.0 - gpow(x * inv)) * ul - r * x;
        };
        const double k1 = f(z0);
        const double k2 = f(z0 + half_dt * k1);
        const double k3 = f(z0 + half_dt * k2);
        const double k4 = f(z0 + dt * k3);
        const double z1 = z0 + sixth_dt * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        z[l] = z1;
        ext.zmax[a] = std::max(ext.zmax[a], z1);
        ext.zmin[a] = std::min(ext.zmin[a], z1);
      }
    }
  }
}

template <int N>
void run_asym_signals(const AsymSatConfig& cfg, long first, long count,
                      long steps, double dt, std::uint64_t seed,
                      AsymExtrema& ext) {
  for (long s = first; s < first + count; s += kLanes) {
    const long active = std::min<long>(kLanes, first + count - s);
    run_asym_block<N>(cfg, active, steps, dt, seed, s, ext);
  }
}

struct RateExtrema {
  double zmax[3];
  double cmax[3];
  double dmax[3];
  RateExtrema() {
    for (int a = 0; a < 3; ++a) zmax[a] = cmax[a] = dmax[a] = 0.0;
  }
  void merge(const RateExtrema& other) {
    for (int a = 0; a < 3; ++a) {
      zmax[a] = std::max(zmax[a], other.zmax[a]);
      cmax[a] = std::max(cmax[a], other.cmax[a]);
      dmax[a] = std::max(dmax[a], other.dmax[a]);
    }
  }
};

// One magnitude+rate signal; drive may change between steps via refresh().
template <class DriveRefresh>
void run_rate_signal(const RateSatConfig& cfg, long steps, double dt,
                     DriveRefresh&& refresh, RateExtrema& ext) {
  double zeta[3] = {0.0, 0.0, 0.0};
  double tc[3] = {0.0, 0.0, 0.0};
  double drive[3] = {0.0, 0.0, 0.0};

  double z_inv[3], c_inv[3], kz[3], r2[3];
  for (int a = 0; a < 3; ++a) {
    z_inv[a] = 1.0 / cfg.tau_max[a];
    c_inv[a] = 1.0 / ((1.0 - cfg.rho1[a]) * cfg.rate_max[a]);
    kz[a] = cfg.rho1[a] * cfg.rate_max[a] / cfg.tau_max[a];
    r2[a] = cfg.rho2[a];
  }

  const double half_dt = 0.5 * dt;
  const double sixth_dt = dt / 6.0;
  const int n = cfg.n;

  for (long step = 0; step < steps; ++step) {
    refresh(step, drive);
    for (int a = 0; a < 3; ++a) {
      const double u = drive[a];
      auto fz = [&](double z, double c) {
        return (1.0 - even_pow(z * z_inv[a], n)) * c - kz[a] * z;
      };
      auto fc = [&](double c) {
        return (1.0 - even_pow(c * c_inv[a], n)) * u - r2[a] * c;
      };
      const double z0 = zeta[a];
      const double c0 = tc[a];
      const double kz1 = fz(z0, c0);
      const double kc1 = fc(c0);
      const double kz2 = fz(z0 + half_dt * kz1, c0 + half_dt * kc1);
      const double kc2 = fc(c0 + half_dt * kc1);
      const double kz3 = fz(z0 + half_dt * kz2, c0 + half_dt * kc2);
      const double kc3 = fc(c0 + half_dt * kc2);
      const double kz4 = fz(z0 + dt * kz3, c0 + dt * kc3);
      const double kc4 = fc(c0 + dt * kc3);

      zeta[a] = z0 + sixth_dt * (kz1 + 2.0 * kz2 + 2.0 * kz3 + kz4);
      tc[a] = c0 + sixth_dt * (kc1 + 2.0 * kc2 + 2.0 * kc3 + kc4);

      ext.zmax[a] = std::max(ext.zmax[a], std::abs(zeta[a]));
      ext.cmax[a] = std::max(ext.cmax[a], std::abs(tc[a]));
      ext.dmax[a] = std::max(ext.dmax[a], std::abs(fz(zeta[a], tc[a])));
    }
  }
}

void fill_rate_report_bounds(const RateSatConfig& cfg, RateCheckReport& rep) {
  for (int a = 0; a < 3; ++a) {
    rep.zeta_bound[a] = cfg.tau_max[a];
    rep.tau_c_bound[a] = rate_intermediate_bound(cfg, a);
    rep.tau_c_cap[a] = (1.0 - cfg.rho1[a]) * cfg.rate_max[a];
    rep.rate_bound[a] = cfg.rate_max[a];
  }
}

bool rate_report_pass(const RateCheckReport& rep) {
  for (int a = 0; a < 3; ++a) {
    if (rep.zeta_abs_max[a] > rep.zeta_bound[a] + rep.tolerance) return false;
    if (rep.tau_c_abs_max[a] > rep.tau_c_bound[a] + rep.tolerance) return false;
    if (rep.zeta_dot_abs_max[a] > rep.rate_bound[a] + rep.tolerance)
      return false;
  }
  return true;
}

}  // namespace

AsymCheckReport check_asym_bounds(const AsymSatConfig& cfg, long signals,
                                  double duration, double dt,
                                  std::uint64_t seed, int threads) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  const long steps = std::lround(duration / dt);
  const int nthreads = std::min<long>(resolve_threads(threads),
                                      std::max<long>(1, signals / kLanes));

  std::vector<AsymExtrema> partial(nthreads);
  std::vector<std::thread> pool;
  const long chunk = (signals + nthreads - 1) / nthreads;
  for (int tix = 0; tix < nthreads; ++tix) {
    const long first = tix * chunk;
    const long count = std::max<long>(0, std::min(chunk, signals - first));
    if (count == 0) break;
    pool.emplace_back([&, tix, first, count] {
      if (cfg.n == 2) {
        run_asym_signals<2>(cfg, first, count, steps, dt, seed, partial[tix]);
      } else {
        run_asym_signals<0>(cfg, first, count, steps, dt, seed, partial[tix]);
      }
    });
  }
  for (auto& th : pool) th.join();

  AsymExtrema ext;
  for (const auto& p : partial) ext.merge(p);

  AsymCheckReport rep;
  rep.signals = signals;
  rep.steps = steps * signals;
  for (int a = 0; a < 3; ++a) {
    rep.zeta_max[a] = ext.zmax[a];
    rep.zeta_min[a] = ext.zmin[a];
    rep.bound_upper[a] = asym_effective_upper_bound(cfg, a);
    rep.bound_lower[a] = -asym_effective_lower_bound(cfg, a);
  }
  rep.pass = true;
  for (int a = 0; a < 3; ++a) {
    if (rep.zeta_max[a] > rep.bound_upper[a] + rep.tolerance) rep.pass = false;
    if (rep.zeta_min[a] < rep.bound_lower[a] - rep.tolerance) rep.pass = false;
  }
  rep.seconds = elapsed_seconds(start);
  return rep;
}

RateCheckReport check_rate_bounds_worstcase(const RateSatConfig& cfg,
                                            double duration, double dt) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  const long steps = std::lround(duration / dt);
  const double b = cfg.drive_norm_bound;

  RateExtrema ext;
  long runs = 0;
  // Axis-aligned drives at the full norm bound, both signs.
  for (int axis = 0; axis < 3; ++axis) {
    for (double sign : {1.0, -1.0}) {
      double u[3] = {0.0, 0.0, 0.0};
      u[axis] = sign * b;
      run_rate_signal(
          cfg, steps, dt,
          [&](long, double* d) { std::copy(u, u + 3, d); }, ext);
      ++runs;
    }
  }
  // All-axes drive on the norm shell.
  for (double sign : {1.0, -1.0}) {
    const double c = sign * b / std::sqrt(3.0);
    run_rate_signal(
        cfg, steps, dt,
        [&](long, double* d) { d[0] = d[1] = d[2] = c; }, ext);
    ++runs;
  }

  RateCheckReport rep;
  rep.signals = runs;
  rep.steps = runs * steps;
  fill_rate_report_bounds(cfg, rep);
  for (int a = 0; a < 3; ++a) {
    rep.zeta_abs_max[a] = ext.zmax[a];
    rep.tau_c_abs_max[a] = ext.cmax[a];
    rep.zeta_dot_abs_max[a] = ext.dmax[a];
  }
  rep.pass = rate_report_pass(rep);
  rep.seconds = elapsed_seconds(start);
  return rep;
}

RateCheckReport check_rate_bounds_fuzz(const RateSatConfig& cfg, long signals,
                                       double duration, double dt,
                                       std::uint64_t seed, int threads) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  const long steps = std::lround(duration / dt);
  const int nthreads =
      std::min<long>(resolve_threads(threads), std::max<long>(1, signals));

  std::vector<RateExtrema> partial(nthreads);
  std::vector<std::thread> pool;
  const long chunk = (signals + nthreads - 1) / nthreads;
  for (int tix = 0; tix < nthreads; ++tix) {
    const long first = tix * chunk;
    const long count = std::max<long>(0, std::min(chunk, signals - first));
    if (count == 0) break;
    pool.emplace_back([&, tix, first, count] {
      for (long s = first; s < first + count; ++s) {
        SegmentDrive gen(signal_seed(seed, s), cfg.drive_norm_bound);
        int hold = 0;
        double u[3] = {0.0, 0.0, 0.0};
        run_rate_signal(
            cfg, steps, dt,
            [&](long, double* d) {
              if (hold == 0) hold = gen.next_segment(u);
              --hold;
              std::copy(u, u + 3, d);
            },
            partial[tix]);
      }
    });
  }
  for (auto& th : pool) th.join();

  RateExtrema ext;
  for (const auto& p : partial) ext.merge(p);

  RateCheckReport rep;
  rep.signals = signals;
  rep.steps = signals * steps;
  fill_rate_report_bounds(cfg, rep);
  for (int a = 0; a < 3; ++a) {
    rep.zeta_abs_max[a] = ext.zmax[a];
    rep.tau_c_abs_max[a] = ext.cmax[a];
    rep.zeta_dot_abs_max[a] = ext.dmax[a];
  }
  rep.pass = rate_report_pass(rep);
  rep.seconds = elapsed_seconds(start);
  return rep;
}

}  // namespace usvctl
