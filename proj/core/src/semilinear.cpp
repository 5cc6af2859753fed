#include "declab/semilinear.hpp"

#include <cmath>

#include "declab/errors.hpp"

namespace declab::semilinear {

void midpoint_sources(const SystemState& s, const NonlinearityPair& fpair, double dt,
                      std::vector<double>& g1, std::vector<double>& g2) {
  const double half = 0.5 * dt;
  const std::size_t n = s.u.size();
  g1.resize(n);
  g2.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    g1[i] = -fpair.f1.f(s.u[i] + half * s.ut[i]);
    g2[i] = -fpair.f2.f(s.v[i] + half * s.vt[i]);
  }
}

void throw_on_blow_up(const SystemState& s) {
  for (const auto* f : {&s.u, &s.v, &s.ut, &s.vt})
    for (double x : *f)
      if (!std::isfinite(x)) throw declab::SimulationError("numerical blow-up");
}

SystemState step_semilinear(const SystemState& state, const CoefficientField& a,
                            const CoefficientField& b, const NonlinearityPair& fpair,
                            double dt) {
  std::vector<double> g1, g2;
  midpoint_sources(state, fpair, dt, g1, g2);
  SystemState out = wave::step_linear(state, a, b, g1, g2, dt);
  throw_on_blow_up(out);
  return out;
}

GuardVerdict explosion_guard(const TrajectoryRecord& traj, double ceiling) {
  GuardVerdict v;
  for (std::size_t k = 0; k < traj.size(); ++k) {
    if (!std::isfinite(traj.h_norms[k]) || traj.h_norms[k] > ceiling) {
      v.fired = true;
      v.time = traj.times[k];
      v.reason = std::isfinite(traj.h_norms[k]) ? "energy-norm ceiling" : "non-finite state";
      return v;
    }
  }
  if (traj.blew_up) {
    v.fired = true;
    v.time = traj.blow_up_time;
    v.reason = traj.stop_reason.empty() ? "numerical blow-up" : traj.stop_reason;
  }
  return v;
}

}  // namespace declab::semilinear
