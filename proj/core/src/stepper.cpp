#include "declab/stepper.hpp"

#include <cmath>

#include "declab/errors.hpp"

namespace declab::wave {

void laplacian_into(std::vector<double>& out, const std::vector<double>& f,
                    const GridDomain& g) {
  out.assign(f.size(), 0.0);
  if (g.dimension() == 1) {
    const double ih2 = 1.0 / (g.hx() * g.hx());
    for (int i = 1; i + 1 < g.nx(); ++i)
      out[i] = (f[i - 1] - 2.0 * f[i] + f[i + 1]) * ih2;
    return;
  }
  const int nx = g.nx(), ny = g.ny();
  const double ihx2 = 1.0 / (g.hx() * g.hx());
  const double ihy2 = 1.0 / (g.hy() * g.hy());
  for (int iy = 1; iy + 1 < ny; ++iy) {
    const std::size_t row = g.index(0, iy);
    for (int ix = 1; ix + 1 < nx; ++ix) {
      const std::size_t i = row + ix;
      out[i] = (f[i - 1] - 2.0 * f[i] + f[i + 1]) * ihx2 +
               (f[i - nx] - 2.0 * f[i] + f[i + nx]) * ihy2;
    }
  }
}

std::vector<double> laplacian(const std::vector<double>& f, const GridDomain& g) {
  std::vector<double> out;
  laplacian_into(out, f, g);
  return out;
}

void StepWorkspace::resize(std::size_t n) {
  for (auto* v : {&lu, &lv, &fu, &fv, &lu1, &lv1}) v->resize(n);
}

void step_linear_inplace(SystemState& s, const CoefficientField& a,
                         const CoefficientField& b, const double* g1, const double* g2,
                         double dt, StepWorkspace& ws) {
  const GridDomain& g = *s.grid;
  if (!(dt > 0)) throw ValidationError("step size must be positive");
  if (dt > g.cfl_limit() * (1.0 + 1e-12)) throw ValidationError("unstable step size");

  const std::size_t n = g.node_count();
  ws.resize(n);
  laplacian_into(ws.lu, s.u, g);
  laplacian_into(ws.lv, s.v, g);

  const auto& av = a.values;
  const auto& bv = b.values;
  const auto& bmask = g.boundary_mask();
  const double half = 0.5 * dt;

  // Acceleration at t, then Verlet position update.
  for (std::size_t i = 0; i < n; ++i) {
    if (bmask[i]) { ws.fu[i] = ws.fv[i] = 0.0; continue; }
    double fu = ws.lu[i] - av[i] * s.ut[i] - bv[i] * s.vt[i];
    double fv = ws.lv[i] + bv[i] * s.ut[i];
    if (g1) fu += g1[i];
    if (g2) fv += g2[i];
    ws.fu[i] = fu;
    ws.fv[i] = fv;
    s.u[i] += dt * s.ut[i] + half * dt * fu;
    s.v[i] += dt * s.vt[i] + half * dt * fv;
  }

  laplacian_into(ws.lu1, s.u, g);
  laplacian_into(ws.lv1, s.v, g);

  // Trapezoidal velocity update; (a,b) terms at t+dt folded into a 2x2 solve.
  for (std::size_t i = 0; i < n; ++i) {
    if (bmask[i]) continue;
    double rp = s.ut[i] + half * (ws.fu[i] + ws.lu1[i]);
    double rq = s.vt[i] + half * (ws.fv[i] + ws.lv1[i]);
    if (g1) rp += half * g1[i];
    if (g2) rq += half * g2[i];
    const double ha = half * av[i];
    const double hb = half * bv[i];
    const double det = 1.0 + ha + hb * hb;
    s.ut[i] = (rp - hb * rq) / det;
    s.vt[i] = (hb * rp + (1.0 + ha) * rq) / det;
  }

  s.time += dt;
}

SystemState step_linear(const SystemState& state, const CoefficientField& a,
                        const CoefficientField& b, const std::vector<double>& g1,
                        const std::vector<double>& g2, double dt) {
  if (!(*a.grid == *state.grid) || !(*b.grid == *state.grid))
    throw ValidationError("step_linear: coefficient grids do not match the state");
  SystemState out = state;
  StepWorkspace ws;
  step_linear_inplace(out, a, b, g1.empty() ? nullptr : g1.data(),
                      g2.empty() ? nullptr : g2.data(), dt, ws);
  return out;
}

}  // namespace declab::wave
