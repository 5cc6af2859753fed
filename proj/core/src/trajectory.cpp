#include "declab/trajectory.hpp"

#include <cmath>

#include "declab/errors.hpp"
#include "declab/semilinear.hpp"

namespace declab::wave {

namespace {

// Shared march for the linear and semilinear runs; `fpair` null means linear.
TrajectoryRecord march(const SystemState& initial, const CoefficientField& a,
                       const CoefficientField& b, const NonlinearityPair* fpair,
                       double dt, int n_steps, const SourceFn* sources,
                       const RunOptions& opts) {
  if (n_steps < 0) throw ValidationError("negative step count");
  if (!(*a.grid == *initial.grid) || !(*b.grid == *initial.grid))
    throw ValidationError("run: coefficient grids do not match the state");

  const GridDomain& g = *initial.grid;
  TrajectoryRecord rec;
  rec.grid = initial.grid;
  rec.has_fields = opts.record_fields;

  SystemState s = initial;
  StepWorkspace ws;
  std::vector<double> g1, g2;
  if (sources || fpair) {
    g1.assign(g.node_count(), 0.0);
    g2.assign(g.node_count(), 0.0);
  }

  auto sample = [&](const SystemState& st) {
    rec.times.push_back(st.time);
    rec.energies.push_back(energy(st, fpair));
    rec.h_norms.push_back(h_norm(st));
    const EnergyBreakdown& e = rec.energies.back();
    rec.u_h1.push_back(std::sqrt(2.0 * e.elastic_u));
    rec.v_h1.push_back(std::sqrt(2.0 * e.elastic_v));
    rec.ut_l2.push_back(std::sqrt(2.0 * e.kinetic_u));
    rec.vt_l2.push_back(std::sqrt(2.0 * e.kinetic_v));
    if (opts.record_fields) {
      rec.u_fields.push_back(st.u);
      rec.v_fields.push_back(st.v);
    }
  };

  double diss = 0.0;
  double rate_prev = dissipation_rate(s, a);
  sample(s);
  rec.dissipation_cum.push_back(diss);

  const int stride = opts.stride < 1 ? 1 : opts.stride;
  for (int n = 1; n <= n_steps; ++n) {
    const double t_mid = s.time + 0.5 * dt;
    if (fpair) {
      semilinear::midpoint_sources(s, *fpair, dt, g1, g2);
    } else if (sources) {
      (*sources)(n - 1, t_mid, g1, g2);
    }
    try {
      step_linear_inplace(s, a, b, g1.empty() ? nullptr : g1.data(),
                          g2.empty() ? nullptr : g2.data(), dt, ws);
      if (fpair) semilinear::throw_on_blow_up(s);
    } catch (const SimulationError& err) {
      rec.blew_up = true;
      rec.blow_up_time = s.time;
      rec.stop_reason = err.what();
      sample(s);
      rec.dissipation_cum.push_back(diss);
      return rec;
    }
    const double rate = dissipation_rate(s, a);
    diss += 0.5 * dt * (rate_prev + rate);
    rate_prev = rate;

    if (n % stride == 0 || n == n_steps) {
      sample(s);
      rec.dissipation_cum.push_back(diss);
      if (rec.h_norms.back() > opts.guard_ceiling) {
        rec.stop_reason = "energy-norm ceiling";
        return rec;
      }
    }
  }
  return rec;
}

}  // namespace

TrajectoryRecord run_linear(const SystemState& initial, const CoefficientField& a,
                            const CoefficientField& b, double dt, int n_steps,
                            const SourceFn* sources, const RunOptions& opts) {
  return march(initial, a, b, nullptr, dt, n_steps, sources, opts);
}

TrajectoryRecord run_semilinear(const SystemState& initial, const CoefficientField& a,
                                const CoefficientField& b, const NonlinearityPair& fpair,
                                double dt, int n_steps, const RunOptions& opts) {
  return march(initial, a, b, &fpair, dt, n_steps, nullptr, opts);
}

double check_energy_identity(const TrajectoryRecord& traj) {
  if (traj.size() == 0) return 0.0;
  const double e0 = traj.energies.front().total;
  if (e0 == 0.0) return 0.0;
  double worst = 0.0;
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const double defect = traj.energies[k].total - e0 + traj.dissipation_cum[k];
    worst = std::max(worst, std::abs(defect));
  }
  return worst / e0;
}

}  // namespace declab::wave
