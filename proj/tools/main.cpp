#include "usvctl/metrics.hpp"
#include "usvctl/plot.hpp"
#include "usvctl/saturation_check.hpp"
#include "usvctl/scenario.hpp"
#include "usvctl/sim.hpp"
#include "usvctl/trace_io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace usvctl;

namespace {

bool is_proposed(Method m) {
  return m == Method::ProposedAsym || m == Method::ProposedMagrate;
}

// A run counts as clean when it finished and, for the proposed methods,
// respected both the actuator bounds and the assumed drive-norm bound.
bool run_ok(const ScenarioConfig& cfg, const RunResult& run,
            const RunMetrics& metrics) {
  if (run.aborted) return false;
  if (!is_proposed(cfg.method)) return true;
  return metrics.constraint_violation_count == 0 && run.drive_bound_ok;
}

void print_metrics(const ScenarioConfig& cfg, const RunResult& run,
                   const RunMetrics& m) {
  std::printf("  records                : %zu\n", run.records.size());
  std::printf("  rmse position          : %.6g m\n", m.rmse_position);
  std::printf("  rmse heading           : %.6g rad\n", m.rmse_heading);
  std::printf("  max |tau|              : [%.4g, %.4g, %.4g]\n",
              m.max_abs_tau[0], m.max_abs_tau[1], m.max_abs_tau[2]);
  std::printf("  max |dtau/dt|          : [%.4g, %.4g, %.4g]\n",
              m.max_abs_tau_rate[0], m.max_abs_tau_rate[1],
              m.max_abs_tau_rate[2]);
  std::printf("  constraint violations  : %ld\n",
              m.constraint_violation_count);
  if (m.settled) {
    std::printf("  settle time            : %.4g s\n", m.settle_time_s);
  } else {
    std::printf("  settle time            : (did not settle)\n");
  }
  std::printf("  final disturbance error: %.6g\n", m.final_disturbance_error);
  if (is_proposed(cfg.method)) {
    std::printf("  drive norm max         : %.6g (assumed bound %.6g)\n",
                run.drive_norm_max,
                cfg.method == Method::ProposedMagrate
                    ? cfg.magrate.drive_norm_bound
                    : cfg.asym.drive_norm_bound);
  }
  if (run.clamp_events > 0) {
    std::printf("  WARNING: %ld diagonal-inverse clamp events\n",
                run.clamp_events);
  }
  if (run.aborted) {
    std::printf("  ABORTED: %s\n", run.abort_reason.c_str());
  }
}

int write_run_artifacts(const ScenarioConfig& cfg, const RunResult& run,
                        const RunMetrics& metrics, const fs::path& out_dir,
                        bool plots) {
  fs::create_directories(out_dir);
  write_csv(run.records, out_dir / "trace.csv");
  {
    std::ofstream mf(out_dir / "metrics.json");
    mf << metrics_to_json_text(metrics);
  }
  {
    std::ofstream sf(out_dir / "scenario.json");
    sf << scenario_to_json_text(cfg);
  }
  if (plots) render_plots(run.records, cfg, out_dir / "plots");
  return 0;
}

int cmd_simulate(const std::string& scenario_path, const std::string& out,
                 bool no_plots) {
  const ScenarioConfig cfg = load_scenario(scenario_path);
  std::printf("scenario '%s': method=%s dt=%g s duration=%g s\n",
              cfg.name.c_str(), to_string(cfg.method).c_str(), cfg.dt,
              cfg.duration);
  const RunResult run = run_scenario(cfg);
  const RunMetrics metrics = compute_metrics(run.records, cfg);
  print_metrics(cfg, run, metrics);
  write_run_artifacts(cfg, run, metrics, out, !no_plots);
  std::printf("  wrote %s/{trace.csv, metrics.json, scenario.json%s}\n",
              out.c_str(), no_plots ? "" : ", plots/");
  return run_ok(cfg, run, metrics) ? 0 : 1;
}

int cmd_compare(const std::string& scenario_path, const std::string& methods,
                const std::string& out, bool no_plots) {
  const ScenarioConfig base = load_scenario(scenario_path);
  const SatStack stack = base.method == Method::ProposedMagrate
                             ? SatStack::Magrate
                             : SatStack::Asym;

  std::vector<Method> selected;
  std::stringstream ss(methods);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    if (item == "proposed") {
      selected.push_back(is_proposed(base.method) ? base.method
                                                  : Method::ProposedAsym);
    } else {
      selected.push_back(method_from_string(item));
    }
  }
  if (selected.empty()) {
    std::fprintf(stderr, "compare: no methods selected\n");
    return 2;
  }

  nlohmann::ordered_json summary;
  bool all_ok = true;
  std::printf("%-18s %12s %12s %10s %10s %8s\n", "method", "rmse_pos [m]",
              "rmse_psi", "max|tau2|", "violations", "settled");
  for (Method m : selected) {
    ScenarioConfig cfg = base;
    cfg.method = m;
    cfg.baseline_stack = stack;
    const RunResult run = run_scenario(cfg);
    const RunMetrics metrics = compute_metrics(run.records, cfg);
    all_ok = all_ok && run_ok(cfg, run, metrics);

    const std::string dir_name = to_string(m);
    write_run_artifacts(cfg, run, metrics, fs::path(out) / dir_name,
                        !no_plots);

    std::printf("%-18s %12.5g %12.5g %10.4g %10ld %8s\n",
                to_string(m).c_str(), metrics.rmse_position,
                metrics.rmse_heading, metrics.max_abs_tau[1],
                metrics.constraint_violation_count,
                metrics.settled ? "yes" : "no");

    nlohmann::ordered_json jm;
    jm["method"] = to_string(m);
    jm["aborted"] = run.aborted;
    jm["metrics"] = nlohmann::ordered_json::parse(metrics_to_json_text(metrics));
    summary.push_back(jm);
  }
  fs::create_directories(out);
  std::ofstream sf(fs::path(out) / "comparison.json");
  sf << summary.dump(2) << "\n";
  std::printf("wrote %s/comparison.json\n", out.c_str());
  return all_ok ? 0 : 1;
}

void print_axis_row(const char* name, const Vec3& observed,
                    const Vec3& bound) {
  std::printf("  %-22s [%12.8g, %12.8g, %12.8g]\n", name, observed[0],
              observed[1], observed[2]);
  std::printf("  %-22s [%12.8g, %12.8g, %12.8g]\n", "  vs bound", bound[0],
              bound[1], bound[2]);
}

int cmd_verify_saturation(const std::string& model, long signals,
                          double duration, double dt, std::uint64_t seed,
                          int threads) {
  if (model == "asym") {
    AsymSatConfig cfg;
    std::printf("asymmetric model: %ld signals, %.4g s at dt=%.4g "
                "(||tau_c|| <= %.4g)\n",
                signals, duration, dt, cfg.drive_norm_bound);
    const AsymCheckReport rep =
        check_asym_bounds(cfg, signals, duration, dt, seed, threads);
    print_axis_row("max zeta", rep.zeta_max, rep.bound_upper);
    print_axis_row("min zeta", rep.zeta_min, rep.bound_lower);
    std::printf("  steps: %ld, wall time: %.2f s\n", rep.steps, rep.seconds);
    std::printf("verify-saturation asym: %s\n", rep.pass ? "PASS" : "FAIL");
    return rep.pass ? 0 : 1;
  }
  if (model == "magrate") {
    RateSatConfig cfg;
    std::printf("magnitude+rate model, worst-case constant drive "
                "(||tau_d|| = %.4g):\n",
                cfg.drive_norm_bound);
    const RateCheckReport wc = check_rate_bounds_worstcase(cfg, duration, dt);
    print_axis_row("max |zeta|", wc.zeta_abs_max, wc.zeta_bound);
    print_axis_row("max |tau_c|", wc.tau_c_abs_max, wc.tau_c_bound);
    print_axis_row("max |zeta_dot|", wc.zeta_dot_abs_max, wc.rate_bound);
    std::printf("  wall time: %.2f s -> %s\n", wc.seconds,
                wc.pass ? "PASS" : "FAIL");

    const long fuzz_signals = std::max<long>(1, signals / 10);
    std::printf("magnitude+rate model, %ld random signals:\n", fuzz_signals);
    const RateCheckReport fz =
        check_rate_bounds_fuzz(cfg, fuzz_signals, duration, dt, seed, threads);
    print_axis_row("max |zeta|", fz.zeta_abs_max, fz.zeta_bound);
    print_axis_row("max |tau_c|", fz.tau_c_abs_max, fz.tau_c_bound);
    print_axis_row("max |zeta_dot|", fz.zeta_dot_abs_max, fz.rate_bound);
    std::printf("  wall time: %.2f s -> %s\n", fz.seconds,
                fz.pass ? "PASS" : "FAIL");

    const bool pass = wc.pass && fz.pass;
    std::printf("verify-saturation magrate: %s\n", pass ? "PASS" : "FAIL");
    return pass ? 0 : 1;
  }
  std::fprintf(stderr, "verify-saturation: unknown model '%s'\n",
               model.c_str());
  return 2;
}

int cmd_sweep(const std::string& scenario_path, const std::string& param,
              const std::string& values, const std::string& out,
              bool no_plots) {
  std::ifstream in(scenario_path);
  if (!in) {
    std::fprintf(stderr, "sweep: cannot open %s\n", scenario_path.c_str());
    return 2;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  nlohmann::json doc = nlohmann::json::parse(buf.str());

  std::vector<double> vals;
  std::stringstream ss(values);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) vals.push_back(std::stod(item));
  }
  if (vals.empty()) {
    std::fprintf(stderr, "sweep: no values given\n");
    return 2;
  }

  const nlohmann::json::json_pointer ptr{param};
  fs::create_directories(out);
  std::ofstream csv(fs::path(out) / "sweep.csv");
  csv << "value,rmse_position,rmse_heading,max_abs_tau1,max_abs_tau2,"
         "max_abs_tau3,violations,settled,settle_time_s\n";

  bool all_ok = true;
  std::printf("%12s %12s %12s %10s %8s\n", "value", "rmse_pos", "rmse_psi",
              "violations", "settled");
  for (double v : vals) {
    nlohmann::json variant = doc;
    variant[ptr] = v;
    const ScenarioConfig cfg = scenario_from_json_text(variant.dump());
    const RunResult run = run_scenario(cfg);
    const RunMetrics m = compute_metrics(run.records, cfg);
    all_ok = all_ok && run_ok(cfg, run, m);

    std::ostringstream tag;
    tag << "value_" << v;
    write_run_artifacts(cfg, run, m, fs::path(out) / tag.str(), !no_plots);

    std::printf("%12.6g %12.5g %12.5g %10ld %8s\n", v, m.rmse_position,
                m.rmse_heading, m.constraint_violation_count,
                m.settled ? "yes" : "no");
    csv << v << ',' << m.rmse_position << ',' << m.rmse_heading << ','
        << m.max_abs_tau[0] << ',' << m.max_abs_tau[1] << ','
        << m.max_abs_tau[2] << ',' << m.constraint_violation_count << ','
        << (m.settled ? 1 : 0) << ',' << m.settle_time_s << '\n';
  }
  std::printf("wrote %s/sweep.csv\n", out.c_str());
  return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Trajectory-tracking simulator for a 3-DOF surface vessel "
               "under actuator magnitude and rate constraints"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string out_dir = "out";
  std::string methods = "proposed,adhoc,unbounded";
  std::string model;
  std::string param;
  std::string values;
  bool no_plots = false;
  long signals = 10000;
  double duration = 100.0;
  double dt = 1e-3;
  std::uint64_t seed = 1;
  int threads = 0;

  auto* sim = app.add_subcommand("simulate", "Run one scenario");
  sim->add_option("--scenario", scenario_path, "Scenario JSON file")
      ->required()
      ->check(CLI::ExistingFile);
  sim->add_option("--out", out_dir, "Output directory");
  sim->add_flag("--no-plots", no_plots, "Skip SVG rendering");

  auto* cmp = app.add_subcommand(
      "compare", "Run several methods on the same scenario");
  cmp->add_option("--scenario", scenario_path, "Scenario JSON file")
      ->required()
      ->check(CLI::ExistingFile);
  cmp->add_option("--methods", methods,
                  "Comma list: proposed, proposed-asym, proposed-magrate, "
                  "adhoc, unbounded");
  cmp->add_option("--out", out_dir, "Output directory");
  cmp->add_flag("--no-plots", no_plots, "Skip SVG rendering");

  auto* ver = app.add_subcommand(
      "verify-saturation",
      "Drive the saturation models at and beyond the worst case and check "
      "the effective bounds");
  ver->add_option("--model", model, "asym or magrate")->required();
  ver->add_option("--signals", signals, "Number of random drive signals");
  ver->add_option("--duration", duration, "Per-signal horizon [s]");
  ver->add_option("--dt", dt, "Integration step [s]");
  ver->add_option("--seed", seed, "RNG seed");
  ver->add_option("--threads", threads, "Worker threads (0 = all cores)");

  auto* swp = app.add_subcommand("sweep",
                                 "Re-run a scenario over a parameter range");
  swp->add_option("--scenario", scenario_path, "Scenario JSON file")
      ->required()
      ->check(CLI::ExistingFile);
  swp->add_option("--param", param,
                  "JSON pointer into the scenario document, e.g. /gains/K1/0")
      ->required();
  swp->add_option("--values", values, "Comma list of values")->required();
  swp->add_option("--out", out_dir, "Output directory");
  swp->add_flag("--no-plots", no_plots, "Skip SVG rendering");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed()) return cmd_simulate(scenario_path, out_dir, no_plots);
    if (cmp->parsed()) {
      return cmd_compare(scenario_path, methods, out_dir, no_plots);
    }
    if (ver->parsed()) {
      return cmd_verify_saturation(model, signals, duration, dt, seed,
                                   threads);
    }
    if (swp->parsed()) {
      return cmd_sweep(scenario_path, param, values, out_dir, no_plots);
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
