#include <benchmark/benchmark.h>

#include <vector>

#include "flyby/core.hpp"
#include "flyby/kepler.hpp"
#include "flyby/parallax.hpp"
#include "flyby/propagator.hpp"
#include "flyby/reference.hpp"

using namespace flyby;

namespace {

const PhysicalParams kEarth = PhysicalParams::earth();
const HyperbolicElements kE1{2459.38, 4.0, deg2rad(23.5), deg2rad(60.0), deg2rad(90.0), deg2rad(-21400.0)};

HyperbolicDelaunay e1_delaunay() { return delaunay_from_elements(kE1, kEarth); }
CartesianState e1_state() { return polar_to_cartesian(to_polar(e1_delaunay(), kEarth)); }

std::vector<double> grid(int n) {
  std::vector<double> t(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) t[static_cast<std::size_t>(k)] = 129600.0 * k / (n - 1);
  return t;
}

void BM_KeplerSolve(benchmark::State& state) {
  double ell = -373.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_hyperbolic_kepler(ell, 4.0));
    ell += 1e-3;
  }
}
BENCHMARK(BM_KeplerSolve);

void BM_FirstOrderCorrections(benchmark::State& state) {
  const HyperbolicDelaunay d = e1_delaunay();
  for (auto _ : state) benchmark::DoNotOptimize(first_order_corrections(d, kEarth));
}
BENCHMARK(BM_FirstOrderCorrections);

void BM_BracketU1(benchmark::State& state) {
  const HyperbolicDelaunay d = e1_delaunay();
  for (auto _ : state) benchmark::DoNotOptimize(poisson_bracket(PolarComponent::r, Generator::u1, d, kEarth));
}
BENCHMARK(BM_BracketU1);

void BM_SecondOrderCorrections(benchmark::State& state) {
  const HyperbolicDelaunay d = e1_delaunay();
  for (auto _ : state) benchmark::DoNotOptimize(second_order_corrections(d, kEarth));
}
BENCHMARK(BM_SecondOrderCorrections);

void BM_Propagate(benchmark::State& state) {
  const auto model = static_cast<ModelKind>(state.range(0));
  const CartesianState cs0 = e1_state();
  const auto t = grid(500);
  for (auto _ : state) benchmark::DoNotOptimize(propagate(model, cs0, t, kEarth));
  state.SetLabel(std::string(model_name(model)));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(t.size()));
}
BENCHMARK(BM_Propagate)->DenseRange(0, 4)->Unit(benchmark::kMillisecond);

void BM_Reference(benchmark::State& state) {
  const CartesianState cs0 = e1_state();
  const auto t = grid(500);
  IntegratorConfig cfg;
  cfg.extended_precision = state.range(0) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(integrate_main_problem(cs0, t, kEarth, cfg));
  state.SetLabel(cfg.extended_precision ? "long double" : "double");
}
BENCHMARK(BM_Reference)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
