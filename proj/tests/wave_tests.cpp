#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "declab/energy.hpp"
#include "declab/errors.hpp"
#include "declab/stepper.hpp"
#include "declab/trajectory.hpp"
#include "doctest.h"

using namespace declab;
using namespace declab::wave;

namespace {

constexpr double kPi = std::numbers::pi;

// Discrete Dirichlet eigenvalue of the 3-point stencil for mode k on [0,L].
double mode_eigenvalue(int k, double h, double length) {
  const double s = std::sin(k * kPi * h / (2.0 * length));
  return 4.0 * s * s / (h * h);
}

SystemState mode_state(geometry::GridPtr g, int kx, int ky = 0) {
  auto s = SystemState::zero(g);
  for (std::size_t i = 0; i < g->node_count(); ++i) {
    const auto p = g->position(i);
    double val = std::sin(kx * kPi * p[0] / g->lx());
    if (g->dimension() == 2) val *= std::sin(ky * kPi * p[1] / g->ly());
    s.u[i] = val;
  }
  s.enforce_dirichlet();
  return s;
}

SystemState random_state(geometry::GridPtr g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist;
  auto s = SystemState::zero(g);
  for (auto* f : {&s.u, &s.v, &s.ut, &s.vt})
    for (auto& x : *f) x = dist(rng);
  s.enforce_dirichlet();
  return s;
}

// Energy recomputed from its definition, independently of energy():
// face-midpoint gradients for the elastic part, trapezoid for the rest.
double naive_energy(const SystemState& s, const semilinear::NonlinearityPair* fpair) {
  const auto& g = *s.grid;
  double elastic = 0, kinetic = 0, potential = 0;
  if (g.dimension() == 1) {
    const double h = g.hx();
    for (int i = 0; i + 1 < g.nx(); ++i) {
      const double du = (s.u[i + 1] - s.u[i]) / h;
      const double dv = (s.v[i + 1] - s.v[i]) / h;
      elastic += 0.5 * h * (du * du + dv * dv);
    }
    for (int i = 0; i < g.nx(); ++i) {
      const double w = (i == 0 || i == g.nx() - 1) ? 0.5 * h : h;
      kinetic += 0.5 * w * (s.ut[i] * s.ut[i] + s.vt[i] * s.vt[i]);
      if (fpair)
        potential += w * (fpair->f1.antiderivative(s.u[i]) +
                          fpair->f2.antiderivative(s.v[i]));
    }
  } else {
    const double hx = g.hx(), hy = g.hy();
    for (int iy = 0; iy < g.ny(); ++iy)
      for (int ix = 0; ix + 1 < g.nx(); ++ix) {
        const double wy = (iy == 0 || iy == g.ny() - 1) ? 0.5 : 1.0;
        const std::size_t i = g.index(ix, iy);
        const double du = (s.u[i + 1] - s.u[i]) / hx;
        const double dv = (s.v[i + 1] - s.v[i]) / hx;
        elastic += 0.5 * wy * hx * hy * (du * du + dv * dv);
      }
    for (int iy = 0; iy + 1 < g.ny(); ++iy)
      for (int ix = 0; ix < g.nx(); ++ix) {
        const double wx = (ix == 0 || ix == g.nx() - 1) ? 0.5 : 1.0;
        const std::size_t i = g.index(ix, iy);
        const double du = (s.u[i + g.nx()] - s.u[i]) / hy;
        const double dv = (s.v[i + g.nx()] - s.v[i]) / hy;
        elastic += 0.5 * wx * hx * hy * (du * du + dv * dv);
      }
    for (int iy = 0; iy < g.ny(); ++iy)
      for (int ix = 0; ix < g.nx(); ++ix) {
        const double wx = (ix == 0 || ix == g.nx() - 1) ? 0.5 : 1.0;
        const double wy = (iy == 0 || iy == g.ny() - 1) ? 0.5 : 1.0;
        const double w = wx * wy * hx * hy;
        const std::size_t i = g.index(ix, iy);
        kinetic += 0.5 * w * (s.ut[i] * s.ut[i] + s.vt[i] * s.vt[i]);
        if (fpair)
          potential += w * (fpair->f1.antiderivative(s.u[i]) +
                            fpair->f2.antiderivative(s.v[i]));
      }
  }
  return elastic + kinetic + potential;
}

}  // namespace

TEST_SUITE("wave") {

TEST_CASE("laplacian reproduces discrete sine eigenpairs") {
  SUBCASE("1d") {
    auto g = geometry::make_interval(1.0, 33);
    for (int k : {1, 3, 7}) {
      const auto s = mode_state(g, k);
      const auto lu = laplacian(s.u, *g);
      const double lam = mode_eigenvalue(k, g->hx(), 1.0);
      for (int i = 1; i + 1 < g->nx(); ++i)
        CHECK(lu[i] == doctest::Approx(-lam * s.u[i]).epsilon(1e-10));
    }
  }
  SUBCASE("2d tensor modes") {
    auto g = geometry::make_rectangle(1.0, 2.0, 17, 25);
    const auto s = mode_state(g, 2, 3);
    const auto lu = laplacian(s.u, *g);
    const double lam =
        mode_eigenvalue(2, g->hx(), 1.0) + mode_eigenvalue(3, g->hy(), 2.0);
    for (int iy = 1; iy + 1 < g->ny(); ++iy)
      for (int ix = 1; ix + 1 < g->nx(); ++ix) {
        const std::size_t i = g->index(ix, iy);
        CHECK(lu[i] == doctest::Approx(-lam * s.u[i]).epsilon(1e-9));
      }
  }
  SUBCASE("boundary rows stay zero") {
    auto g = geometry::make_rectangle(1.0, 1.0, 9, 9);
    const auto lu = laplacian(random_state(g, 5).u, *g);
    for (std::size_t i = 0; i < g->node_count(); ++i)
      if (g->is_boundary(i)) CHECK(lu[i] == 0.0);
  }
}

TEST_CASE("energy matches an independent quadrature") {
  for (auto g : {geometry::make_interval(1.0, 37), geometry::make_rectangle(1.0, 1.5, 13, 19)}) {
    const auto s = random_state(g, 42);
    SUBCASE("linear part") {
      const auto e = energy(s);
      CHECK(e.total ==
            doctest::Approx(naive_energy(s, nullptr)).epsilon(1e-12));
      CHECK(e.nonlinear_potential == 0.0);
      CHECK(e.total == doctest::Approx(e.kinetic_u + e.kinetic_v + e.elastic_u +
                                       e.elastic_v));
    }
    SUBCASE("with defocusing potential") {
      const auto fpair = semilinear::NonlinearityPair::cubic();
      const auto e = energy(s, &fpair);
      CHECK(e.total == doctest::Approx(naive_energy(s, &fpair)).epsilon(1e-12));
      CHECK(e.nonlinear_potential > 0.0);
    }
  }
}

TEST_CASE("energy-space norm squared is twice the linear energy") {
  auto g = geometry::make_rectangle(1.0, 1.0, 11, 11);
  const auto s = random_state(g, 9);
  CHECK(h_norm_sq(s) == doctest::Approx(2.0 * energy(s).total).epsilon(1e-13));
  CHECK(h_norm(s) == doctest::Approx(std::sqrt(h_norm_sq(s))));
  CHECK(h_norm_diff(s, s) == 0.0);
}

TEST_CASE("undamped mode follows the exact Verlet rotation") {
  // With a = b = 0 the scheme on an eigenmode is a 2x2 rotation-like map with
  // cos(Omega) = 1 - lambda dt^2 / 2; after n steps u = cos(n Omega) u0.
  auto g = geometry::make_interval(1.0, 51);
  const int k = 3, n = 200;
  const double lam = mode_eigenvalue(k, g->hx(), 1.0);
  const double dt = 0.4 * g->cfl_limit();
  const auto z = geometry::zero_coefficient(g);

  SystemState s = mode_state(g, k);
  StepWorkspace ws;
  for (int i = 0; i < n; ++i) step_linear_inplace(s, z, z, nullptr, nullptr, dt, ws);

  const double omega = std::acos(1.0 - 0.5 * lam * dt * dt);
  const double cu = std::cos(n * omega);
  const double cv = -lam * dt * (1.0 - 0.25 * lam * dt * dt) * std::sin(n * omega) /
                    std::sin(omega);
  const auto s0 = mode_state(g, k);
  for (int i = 0; i < g->nx(); ++i) {
    CHECK(s.u[i] == doctest::Approx(cu * s0.u[i]).epsilon(1e-9));
    CHECK(s.ut[i] == doctest::Approx(cv * s0.u[i]).epsilon(1e-9));
  }
  CHECK(s.time == doctest::Approx(n * dt));
}

TEST_CASE("step rejects unstable dt and foreign grids") {
  auto g = geometry::make_interval(1.0, 21);
  const auto z = geometry::zero_coefficient(g);
  auto s = mode_state(g, 1);
  StepWorkspace ws;
  CHECK_THROWS_AS(step_linear_inplace(s, z, z, nullptr, nullptr, 1.01 * g->cfl_limit(), ws),
                  ValidationError);
  CHECK_THROWS_AS(step_linear_inplace(s, z, z, nullptr, nullptr, -0.1, ws), ValidationError);
  const auto z2 = geometry::zero_coefficient(geometry::make_interval(1.0, 31));
  CHECK_THROWS_AS(step_linear(s, z2, z2, {}, {}, 0.01), ValidationError);
}

TEST_CASE("damping dissipates and the balance closes at second order") {
  auto g = geometry::make_interval(1.0, 101);
  const auto a = geometry::build_coefficient(geometry::RegionSpec::box1d(0.0, 0.4, 0.05),
                                             g, 1.0, 0.2);
  const auto z = geometry::zero_coefficient(g);
  // Smooth data: the identity residual is the low-mode O(dt^2) defect, not the
  // grid-scale shadow oscillation that spectrally flat data would excite.
  auto s0 = mode_state(g, 1);
  for (int i = 0; i < g->nx(); ++i) {
    const auto p = g->position(i);
    s0.ut[i] = 0.5 * std::sin(2.0 * kPi * p[0]);
  }
  s0.enforce_dirichlet();

  const double dt = 0.25 * g->cfl_limit();
  const int n = 400;
  const auto run = [&](double step, int count) {
    return run_linear(s0, a, z, step, count, nullptr, {});
  };
  const auto traj = run(dt, n);
  // Monotone energy, monotone accumulated dissipation.
  for (std::size_t i = 1; i < traj.size(); ++i) {
    CHECK(traj.energies[i].total <= traj.energies[i - 1].total * (1 + 1e-12));
    CHECK(traj.dissipation_cum[i] >= traj.dissipation_cum[i - 1]);
  }
  const double r1 = check_energy_identity(traj);
  const double r2 = check_energy_identity(run(dt / 2, 2 * n));
  CHECK(r1 < 1e-4);
  CHECK(r1 / r2 == doctest::Approx(4.0).epsilon(0.2));
}

TEST_CASE("skew coupling exchanges but conserves") {
  auto g = geometry::make_interval(1.0, 101);
  const auto z = geometry::zero_coefficient(g);
  const auto b = geometry::build_coefficient(geometry::RegionSpec::whole_domain(), g, 1.5, 0.5);
  auto s0 = mode_state(g, 1);
  const double dt = 0.5 * g->cfl_limit();
  const auto traj = run_linear(s0, z, b, dt, 600, nullptr, {});

  // No a-term: zero dissipation, the identity residual is the mode-1 shadow
  // oscillation, about lambda dt^2 / 4 (6e-5 here).
  CHECK(traj.dissipation_cum.back() == 0.0);
  CHECK(check_energy_identity(traj) < 5e-4);
  // The v component actually picks up energy on the way.
  double v_peak = 0;
  for (const auto& e : traj.energies) v_peak = std::max(v_peak, e.kinetic_v + e.elastic_v);
  CHECK(v_peak > 0.1 * traj.initial_energy());
}

TEST_CASE("trajectory sampling covers start, stride and final step") {
  auto g = geometry::make_interval(1.0, 21);
  const auto z = geometry::zero_coefficient(g);
  const double dt = 0.4 * g->cfl_limit();
  RunOptions opts;
  opts.stride = 3;
  const auto traj = run_linear(mode_state(g, 1), z, z, dt, 10, nullptr, opts);
  REQUIRE(traj.size() == 5);  // steps 0, 3, 6, 9, 10
  CHECK(traj.times[0] == 0.0);
  CHECK(traj.times[1] == doctest::Approx(3 * dt));
  CHECK(traj.times.back() == doctest::Approx(10 * dt));
  CHECK(!traj.has_fields);

  RunOptions with_fields;
  with_fields.record_fields = true;
  const auto tf = run_linear(mode_state(g, 1), z, z, dt, 4, nullptr, with_fields);
  REQUIRE(tf.has_fields);
  CHECK(tf.u_fields.size() == tf.size());
  CHECK(tf.u_fields[0].size() == g->node_count());
}

TEST_CASE("guard ceiling stops a run early") {
  auto g = geometry::make_interval(1.0, 21);
  const auto z = geometry::zero_coefficient(g);
  auto s = mode_state(g, 1);
  s.scale(100.0);
  RunOptions opts;
  opts.guard_ceiling = 1e-3;  // below the data norm, must trip at once
  const auto traj = run_linear(s, z, z, 0.4 * g->cfl_limit(), 50, nullptr, opts);
  CHECK(!traj.stop_reason.empty());
  CHECK(traj.times.back() < 50 * 0.4 * g->cfl_limit());
}

TEST_CASE("sources inject energy where expected") {
  auto g = geometry::make_interval(1.0, 41);
  const auto z = geometry::zero_coefficient(g);
  SourceFn src = [&](int, double, std::vector<double>& g1, std::vector<double>& g2) {
    std::fill(g1.begin(), g1.end(), 0.0);
    std::fill(g2.begin(), g2.end(), 0.0);
    g1[20] = 1.0;
  };
  const auto traj = run_linear(SystemState::zero(g), z, z, 0.4 * g->cfl_limit(), 100, &src, {});
  CHECK(traj.initial_energy() == 0.0);
  CHECK(traj.final_energy() > 0.0);
}

}  // TEST_SUITE
