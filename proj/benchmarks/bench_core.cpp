#include "usvctl/controller.hpp"
#include "usvctl/saturation.hpp"
#include "usvctl/saturation_check.hpp"
#include "usvctl/scenario.hpp"
#include "usvctl/sim.hpp"
#include "usvctl/vessel.hpp"

#include <benchmark/benchmark.h>

using namespace usvctl;

namespace {

void BM_DynamicsDeriv(benchmark::State& state) {
  const VesselModel model(cybership2_params());
  const Vec3 nu(0.8, -0.2, 0.1);
  const Vec3 tau(3.0, 1.5, 0.5);
  const Vec3 b(0.2, 0.2, 0.1);
  for (auto _ : state) {
    Vec3 out = model.dynamics_deriv(nu, tau, b);
    benchmark::DoNotOptimize(out);
  }
}
BENCHMARK(BM_DynamicsDeriv);

void BM_AsymSaturationDeriv(benchmark::State& state) {
  const AsymSatConfig cfg;
  const Vec3 zeta(2.0, -1.5, 0.5);
  const Vec3 drive(40.0, -20.0, 10.0);
  for (auto _ : state) {
    Vec3 out = asym_saturation_deriv(zeta, drive, cfg);
    benchmark::DoNotOptimize(out);
  }
}
BENCHMARK(BM_AsymSaturationDeriv);

void BM_ControllerStep(benchmark::State& state) {
  const VesselModel model(cybership2_params());
  BacksteppingController ctrl(Method::ProposedAsym, model,
                              ControllerGains::asym_defaults(),
                              AsymSatConfig{}, RateSatConfig{}, 0.01);
  const auto ref = sample_reference(TrajectoryConfig::ellipse(), 5.0);
  const Vec3 eta(-0.5, 0.2, 0.05);
  const Vec3 nu(0.1, 0.0, 0.01);
  ActuatorState act;
  act.zeta = Vec3(1.0, 0.5, 0.2);
  for (auto _ : state) {
    ControlDecision d = ctrl.step(eta, nu, ref, Vec3(0.1, 0.1, 0.05), act);
    benchmark::DoNotOptimize(d);
  }
}
BENCHMARK(BM_ControllerStep);

void BM_ScenarioSecond(benchmark::State& state) {
  ScenarioConfig cfg =
      default_scenario(Method::ProposedAsym, TrajectoryKind::Ellipse);
  cfg.duration = 1.0;  // 100 steps per iteration
  for (auto _ : state) {
    RunResult run = run_scenario(cfg);
    benchmark::DoNotOptimize(run);
  }
  state.SetItemsProcessed(state.iterations() * 100);
}
BENCHMARK(BM_ScenarioSecond)->Unit(benchmark::kMillisecond);

void BM_AsymFuzzSignal(benchmark::State& state) {
  const AsymSatConfig cfg;
  long signal = 0;
  for (auto _ : state) {
    // One 10 s signal at dt = 1e-3, single thread.
    AsymCheckReport rep =
        check_asym_bounds(cfg, 8, 10.0, 1e-3, 1234 + signal++, 1);
    benchmark::DoNotOptimize(rep);
  }
  state.SetItemsProcessed(state.iterations() * 8 * 10000);
}
BENCHMARK(BM_AsymFuzzSignal)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
