#include "declab/picard.hpp"

#include <cmath>

#include "declab/errors.hpp"

namespace declab::semilinear {

namespace {

int window_steps(double horizon, double dt) {
  if (!(horizon > 0)) throw ValidationError("picard window must be positive");
  if (!(dt > 0)) throw ValidationError("step size must be positive");
  return static_cast<int>(std::ceil(horizon / dt - 1e-9));
}

// Linear march with per-step sources taken from the previous iterate at the
// chord midpoint, storing every step.
std::vector<wave::SystemState> sweep(const wave::SystemState& initial,
                                     const CoefficientField& a, const CoefficientField& b,
                                     const NonlinearityPair* fpair,
                                     const std::vector<wave::SystemState>* prev,
                                     double dt, int n_steps) {
  std::vector<wave::SystemState> out;
  out.reserve(n_steps + 1);
  out.push_back(initial);
  wave::StepWorkspace ws;
  std::vector<double> g1, g2;
  const std::size_t n = initial.u.size();
  if (fpair) {
    g1.resize(n);
    g2.resize(n);
  }
  for (int k = 0; k < n_steps; ++k) {
    wave::SystemState s = out.back();
    if (fpair) {
      const auto& p0 = (*prev)[k];
      const auto& p1 = (*prev)[k + 1];
      for (std::size_t i = 0; i < n; ++i) {
        g1[i] = -fpair->f1.f(0.5 * (p0.u[i] + p1.u[i]));
        g2[i] = -fpair->f2.f(0.5 * (p0.v[i] + p1.v[i]));
      }
    }
    wave::step_linear_inplace(s, a, b, fpair ? g1.data() : nullptr,
                              fpair ? g2.data() : nullptr, dt, ws);
    throw_on_blow_up(s);
    out.push_back(std::move(s));
  }
  return out;
}

double sup_h_distance(const std::vector<wave::SystemState>& x,
                      const std::vector<wave::SystemState>& y) {
  double worst = 0;
  for (std::size_t k = 0; k < x.size(); ++k)
    worst = std::max(worst, wave::h_norm_diff(x[k], y[k]));
  return worst;
}

TrajectoryRecord record_from_states(const std::vector<wave::SystemState>& states,
                                    const CoefficientField& a,
                                    const NonlinearityPair& fpair, double dt,
                                    int stride) {
  TrajectoryRecord rec;
  rec.grid = states.front().grid;
  rec.has_fields = true;
  double diss = 0;
  double rate_prev = wave::dissipation_rate(states.front(), a);
  const int last = static_cast<int>(states.size()) - 1;
  for (int k = 0; k <= last; ++k) {
    if (k > 0) {
      const double rate = wave::dissipation_rate(states[k], a);
      diss += 0.5 * dt * (rate_prev + rate);
      rate_prev = rate;
    }
    if (k % stride != 0 && k != last) continue;
    const auto& s = states[k];
    rec.times.push_back(s.time);
    rec.energies.push_back(wave::energy(s, &fpair));
    rec.h_norms.push_back(wave::h_norm(s));
    const auto& e = rec.energies.back();
    rec.u_h1.push_back(std::sqrt(2.0 * e.elastic_u));
    rec.v_h1.push_back(std::sqrt(2.0 * e.elastic_v));
    rec.ut_l2.push_back(std::sqrt(2.0 * e.kinetic_u));
    rec.vt_l2.push_back(std::sqrt(2.0 * e.kinetic_v));
    rec.u_fields.push_back(s.u);
    rec.v_fields.push_back(s.v);
    rec.dissipation_cum.push_back(diss);
  }
  return rec;
}

}  // namespace

PicardResult picard_solve(const SystemState& initial, const CoefficientField& a,
                          const CoefficientField& b, const NonlinearityPair& fpair,
                          double horizon, double dt, double tol, int max_iter,
                          int record_stride) {
  if (max_iter < 1) throw ValidationError("max_iter must be >= 1");
  const int n_steps = window_steps(horizon, dt);

  PicardResult res;
  std::vector<wave::SystemState> prev =
      sweep(initial, a, b, nullptr, nullptr, dt, n_steps);

  if (fpair.is_zero()) {  // free evolution already is the fixed point
    res.states = std::move(prev);
    res.trajectory = record_from_states(res.states, a, fpair, dt, record_stride);
    res.iterations = 1;
    res.residuals = {0.0};
    return res;
  }

  int worsening = 0;
  for (int it = 1; it <= max_iter; ++it) {
    std::vector<wave::SystemState> cur = sweep(initial, a, b, &fpair, &prev, dt, n_steps);
    const double r = sup_h_distance(cur, prev);
    if (!res.residuals.empty() && r >= res.residuals.back()) {
      if (++worsening >= 3) throw SimulationError("non-contractive window");
    } else {
      worsening = 0;
    }
    res.residuals.push_back(r);
    prev = std::move(cur);
    if (r <= tol) {
      res.states = std::move(prev);
      res.trajectory = record_from_states(res.states, a, fpair, dt, record_stride);
      res.iterations = it;
      return res;
    }
  }
  throw SimulationError("picard iteration did not converge within max_iter");
}

double picard_stability(const SystemState& initial1, const SystemState& initial2,
                        const CoefficientField& a, const CoefficientField& b,
                        const NonlinearityPair& fpair, double horizon, double dt,
                        double tol, int max_iter) {
  const double d0 = wave::h_norm_diff(initial1, initial2);
  if (d0 == 0.0) return 0.0;
  PicardResult r1 = picard_solve(initial1, a, b, fpair, horizon, dt, tol, max_iter);
  PicardResult r2 = picard_solve(initial2, a, b, fpair, horizon, dt, tol, max_iter);
  return sup_h_distance(r1.states, r2.states) / d0;
}

}  // namespace declab::semilinear
