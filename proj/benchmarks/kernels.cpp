// Hot-kernel timings: stencil application, the coupled step, ray tracing,
// and the transport Gramian. Grid sizes match the scales the studies run at.

#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "declab/gcc.hpp"
#include "declab/ray.hpp"
#include "declab/ray_ode.hpp"
#include "declab/scenario.hpp"
#include "declab/semilinear.hpp"
#include "declab/stepper.hpp"

using namespace declab;

namespace {

wave::SystemState band_state(geometry::GridPtr g) { return lab::random_band_data(g, 6, 42); }

void bm_laplacian_1d(benchmark::State& state) {
  auto g = geometry::make_interval(1.0, 1025);
  const auto s = band_state(g);
  std::vector<double> out(g->node_count());
  for (auto _ : state) {
    wave::laplacian_into(out, s.u, *g);
    benchmark::DoNotOptimize(out.data());
  }
}

void bm_laplacian_2d(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto g = geometry::make_rectangle(1.0, 1.0, n, n);
  const auto s = band_state(g);
  std::vector<double> out(g->node_count());
  for (auto _ : state) {
    wave::laplacian_into(out, s.u, *g);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * g->node_count());
}

void bm_step_linear(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto g = geometry::make_rectangle(1.0, 1.0, n, n);
  const auto a = geometry::build_coefficient(
      geometry::RegionSpec::side_collar({geometry::Side::left, geometry::Side::bottom}, 0.25,
                                        0.05),
      g, 1.0, 0.1);
  const auto b = geometry::build_coefficient(
      geometry::RegionSpec::side_collar({geometry::Side::left, geometry::Side::bottom}, 0.2,
                                        0.025),
      g, 1.0, 0.1);
  auto s = band_state(g);
  const double dt = 0.25 * g->cfl_limit();
  wave::StepWorkspace ws;
  for (auto _ : state) {
    wave::step_linear_inplace(s, a, b, nullptr, nullptr, dt, ws);
    benchmark::DoNotOptimize(s.u.data());
  }
  state.SetItemsProcessed(state.iterations() * g->node_count());
}

void bm_step_semilinear(benchmark::State& state) {
  auto g = geometry::make_rectangle(1.0, 1.0, 129, 129);
  const auto z = geometry::zero_coefficient(g);
  const auto fpair = semilinear::NonlinearityPair::cubic();
  auto s = band_state(g);
  lab::normalize_energy(s, fpair, 1.0);
  const double dt = 0.25 * g->cfl_limit();
  for (auto _ : state) {
    s = semilinear::step_semilinear(s, z, z, fpair, dt);
    benchmark::DoNotOptimize(s.u.data());
  }
}

void bm_energy_2d(benchmark::State& state) {
  auto g = geometry::make_rectangle(1.0, 1.0, 257, 257);
  const auto s = band_state(g);
  for (auto _ : state) {
    const auto e = wave::energy(s);
    benchmark::DoNotOptimize(e.total);
  }
}

void bm_trace_ray(benchmark::State& state) {
  auto g = geometry::make_rectangle(1.0, 1.0, 129, 129);
  const double th = 0.7;
  for (auto _ : state) {
    const auto path = rays::trace_ray({0.37, 0.53}, {std::cos(th), std::sin(th)}, 100.0, *g);
    benchmark::DoNotOptimize(path.events.size());
  }
}

void bm_first_hit(benchmark::State& state) {
  auto g = geometry::make_rectangle(1.0, 1.0, 129, 129);
  const auto region =
      geometry::RegionSpec::side_collar({geometry::Side::left, geometry::Side::bottom}, 0.25);
  const auto boxes = region.resolve(*g);
  const double th = 0.7;
  const auto path = rays::trace_ray({0.37, 0.53}, {std::cos(th), std::sin(th)}, 100.0, *g);
  for (auto _ : state) {
    benchmark::DoNotOptimize(rays::first_hit_time(path, boxes, 2));
  }
}

void bm_gcc_verify(benchmark::State& state) {
  auto g = geometry::make_rectangle(1.0, 1.0, 129, 129);
  const auto region =
      geometry::RegionSpec::side_collar({geometry::Side::left, geometry::Side::bottom}, 0.25);
  for (auto _ : state) {
    const auto rep = rays::gcc_verify(region, *g, 10000, 4.0, 7);
    benchmark::DoNotOptimize(rep.rays.size());
  }
}

void bm_gramian(benchmark::State& state) {
  const double T = 2 * std::numbers::pi;
  const auto sys = odeobs::make_system(SampledFunction::constant(1.0, T, 4097),
                                       SampledFunction::constant(2.0, T, 4097));
  for (auto _ : state) {
    const auto gm = odeobs::observation_gramian(sys);
    benchmark::DoNotOptimize(gm.g11);
  }
}

}  // namespace

BENCHMARK(bm_laplacian_1d)->Unit(benchmark::kMicrosecond);
BENCHMARK(bm_laplacian_2d)->Arg(129)->Arg(257)->Unit(benchmark::kMicrosecond);
BENCHMARK(bm_step_linear)->Arg(129)->Arg(257)->Unit(benchmark::kMicrosecond);
BENCHMARK(bm_step_semilinear)->Unit(benchmark::kMicrosecond);
BENCHMARK(bm_energy_2d)->Unit(benchmark::kMicrosecond);
BENCHMARK(bm_trace_ray)->Unit(benchmark::kMicrosecond);
BENCHMARK(bm_first_hit)->Unit(benchmark::kNanosecond);
BENCHMARK(bm_gcc_verify)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_gramian)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
