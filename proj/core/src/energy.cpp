#include "declab/energy.hpp"

#include <cmath>

#include "declab/errors.hpp"

namespace declab::wave {

namespace {

// 1/2 * sum over faces of (difference/h)^2 * face volume. Equals
// 1/2 u.(-L u) * cell volume for Dirichlet data: the stencil's own quadratic form.
double elastic_term(const std::vector<double>& f, const GridDomain& g) {
  double acc = 0;
  if (g.dimension() == 1) {
    const double h = g.hx();
    for (int i = 0; i + 1 < g.nx(); ++i) {
      const double d = f[i + 1] - f[i];
      acc += d * d;
    }
    return 0.5 * acc / h;
  }
  const int nx = g.nx(), ny = g.ny();
  const double hx = g.hx(), hy = g.hy();
  double accx = 0, accy = 0;
  for (int iy = 0; iy < ny; ++iy) {
    const std::size_t row = g.index(0, iy);
    for (int ix = 0; ix + 1 < nx; ++ix) {
      const double d = f[row + ix + 1] - f[row + ix];
      accx += d * d;
    }
  }
  for (int iy = 0; iy + 1 < ny; ++iy) {
    const std::size_t row = g.index(0, iy);
    for (int ix = 0; ix < nx; ++ix) {
      const double d = f[row + ix + nx] - f[row + ix];
      accy += d * d;
    }
  }
  return 0.5 * (accx * hy / hx + accy * hx / hy);
}

double trapezoid_weight(const GridDomain& g, std::size_t i) {
  double w = g.cell_volume();
  const int ix = static_cast<int>(i % g.nx());
  const int iy = static_cast<int>(i / g.nx());
  if (ix == 0 || ix == g.nx() - 1) w *= 0.5;
  if (g.dimension() == 2 && (iy == 0 || iy == g.ny() - 1)) w *= 0.5;
  return w;
}

double kinetic_term(const std::vector<double>& f, const GridDomain& g) {
  double acc = 0;
  for (std::size_t i = 0; i < f.size(); ++i) acc += trapezoid_weight(g, i) * f[i] * f[i];
  return 0.5 * acc;
}

}  // namespace

EnergyBreakdown energy(const SystemState& s, const NonlinearityPair* fpair) {
  const GridDomain& g = *s.grid;
  EnergyBreakdown e;
  e.kinetic_u = kinetic_term(s.ut, g);
  e.kinetic_v = kinetic_term(s.vt, g);
  e.elastic_u = elastic_term(s.u, g);
  e.elastic_v = elastic_term(s.v, g);
  if (fpair && !fpair->is_zero()) e.nonlinear_potential = nonlinear_potential(s.u, s.v, *fpair, g);
  e.total = e.kinetic_u + e.kinetic_v + e.elastic_u + e.elastic_v + e.nonlinear_potential;
  return e;
}

double nonlinear_potential(const std::vector<double>& u, const std::vector<double>& v,
                           const NonlinearityPair& fpair, const GridDomain& grid) {
  double acc = 0;
  for (std::size_t i = 0; i < u.size(); ++i)
    acc += trapezoid_weight(grid, i) *
           (fpair.f1.antiderivative(u[i]) + fpair.f2.antiderivative(v[i]));
  return acc;
}

double dissipation_rate(const SystemState& s, const CoefficientField& a) {
  if (!(*a.grid == *s.grid)) throw ValidationError("dissipation_rate: grid mismatch");
  double acc = 0;
  for (std::size_t i = 0; i < s.ut.size(); ++i)
    acc += trapezoid_weight(*s.grid, i) * a.values[i] * s.ut[i] * s.ut[i];
  return acc;
}

SystemState SystemState::zero(GridPtr grid) {
  SystemState s;
  s.grid = grid;
  const std::size_t n = grid->node_count();
  s.u.assign(n, 0.0);
  s.v.assign(n, 0.0);
  s.ut.assign(n, 0.0);
  s.vt.assign(n, 0.0);
  return s;
}

void SystemState::enforce_dirichlet() {
  const auto& mask = grid->boundary_mask();
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (mask[i]) u[i] = v[i] = ut[i] = vt[i] = 0.0;
  }
}

void SystemState::scale(double s) {
  for (auto* f : {&u, &v, &ut, &vt})
    for (double& x : *f) x *= s;
}

double h_norm_sq(const SystemState& s) {
  const GridDomain& g = *s.grid;
  return 2.0 * (elastic_term(s.u, g) + elastic_term(s.v, g) + kinetic_term(s.ut, g) +
                kinetic_term(s.vt, g));
}

double h_norm(const SystemState& s) { return std::sqrt(h_norm_sq(s)); }

double h_norm_diff(const SystemState& a, const SystemState& b) {
  SystemState d = a;
  for (std::size_t i = 0; i < d.u.size(); ++i) {
    d.u[i] -= b.u[i];
    d.v[i] -= b.v[i];
    d.ut[i] -= b.ut[i];
    d.vt[i] -= b.vt[i];
  }
  return h_norm(d);
}

}  // namespace declab::wave
