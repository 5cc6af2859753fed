#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "declab/energy.hpp"
#include "declab/stepper.hpp"

namespace declab::wave {

/// Sampled history of a run: energy breakdowns, accumulated dissipation
/// (trapezoid in time at every step), energy-space norms, and optionally the
/// displacement fields themselves (needed for space-time norms).
struct TrajectoryRecord {
  GridPtr grid;
  std::vector<double> times;
  std::vector<EnergyBreakdown> energies;
  std::vector<double> dissipation_cum;
  std::vector<double> h_norms;
  // Per-sample component norms: |grad u|, |grad v| (L2), |ut|, |vt| (L2).
  std::vector<double> u_h1, v_h1, ut_l2, vt_l2;

  bool has_fields = false;
  std::vector<std::vector<double>> u_fields, v_fields;

  bool blew_up = false;
  double blow_up_time = std::numeric_limits<double>::quiet_NaN();
  std::string stop_reason;
  bool hypothesis_violating = false;

  std::size_t size() const { return times.size(); }
  double initial_energy() const { return energies.empty() ? 0.0 : energies.front().total; }
  double final_energy() const { return energies.empty() ? 0.0 : energies.back().total; }
};

struct RunOptions {
  int stride = 1;              // sample every `stride` steps (plus the final step)
  bool record_fields = false;
  double guard_ceiling = std::numeric_limits<double>::infinity();  // energy-norm ceiling
};

/// Per-step midpoint sources; fills g1/g2 (sized to the grid).
using SourceFn =
    std::function<void(int step, double t_mid, std::vector<double>& g1, std::vector<double>& g2)>;

/// March the linear system n_steps of size dt from `initial`. When `sources`
/// is null the run is source-free. Stops early (with stop_reason set) if the
/// guard ceiling is crossed. Energies exclude any nonlinear potential.
TrajectoryRecord run_linear(const SystemState& initial, const CoefficientField& a,
                            const CoefficientField& b, double dt, int n_steps,
                            const SourceFn* sources, const RunOptions& opts = {});

/// Same loop with the semilinear midpoint sources and energies including the
/// potential. On blow-up (non-finite fields) the record is truncated and
/// flagged instead of throwing.
TrajectoryRecord run_semilinear(const SystemState& initial, const CoefficientField& a,
                                const CoefficientField& b, const NonlinearityPair& fpair,
                                double dt, int n_steps, const RunOptions& opts = {});

/// Max over samples of |E(t) - E(0) + D(t)| / E(0) where D is the accumulated
/// dissipation; 0 for zero initial energy. For a sourceless linear run this
/// is the discrete defect of the energy identity.
double check_energy_identity(const TrajectoryRecord& traj);

}  // namespace declab::wave
