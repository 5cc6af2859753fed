#pragma once

#include "declab/semilinear.hpp"

namespace declab::semilinear {

/// Fixed-point (Duhamel) solve of the semilinear system on a short window:
/// iterate 0 is the linear evolution of the data (a, b active, f off); each
/// following iterate re-runs the linear march with frozen chord-midpoint
/// sources -f(U_prev). Residuals are sup-in-time energy-space norms of
/// consecutive differences. Desk-scale windows only: every step of the
/// current and previous iterate is kept in memory.
struct PicardResult {
  TrajectoryRecord trajectory;       // converged iterate, sampled at record_stride
  std::vector<SystemState> states;   // converged iterate, every step
  std::vector<double> residuals;     // r_k = ||U_k - U_{k-1}||, k = 1..
  int iterations = 0;
};

/// Throws SimulationError("non-contractive window") after three consecutive
/// non-decreasing residuals, and when max_iter is exhausted before the
/// residual falls below tol.
PicardResult picard_solve(const SystemState& initial, const CoefficientField& a,
                          const CoefficientField& b, const NonlinearityPair& fpair,
                          double horizon, double dt, double tol, int max_iter,
                          int record_stride = 1);

/// Sup-in-time energy-norm distance of the two fixed points over the shared
/// window divided by the initial distance; 0 for identical data.
double picard_stability(const SystemState& initial1, const SystemState& initial2,
                        const CoefficientField& a, const CoefficientField& b,
                        const NonlinearityPair& fpair, double horizon, double dt,
                        double tol, int max_iter);

}  // namespace declab::semilinear
