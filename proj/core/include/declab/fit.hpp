#pragma once

#include <vector>

#include "declab/trajectory.hpp"

namespace declab::lab {

/// Least-squares fit of log E(t) = intercept - beta*t on a tail window: beta
/// is the energy decay rate in E(t) <= C e^{-beta t}. r_squared is the usual
/// coefficient of determination; a flat window (zero variance) fits exactly,
/// r_squared = 1.
struct DecayFit {
  double beta = 0;
  double intercept = 0;  // log E at t = 0 extrapolated
  double r_squared = 0;
  double t_lo = 0, t_hi = 0;
  int n_points = 0;
};

/// Window policy: drop samples with E <= 1e-12 * E(0) (noise floor), then fit
/// the last 60% of what survives. Throws ValidationError when fewer than 10
/// samples remain.
DecayFit fit_decay(const std::vector<double>& times, const std::vector<double>& energies);

DecayFit fit_decay(const wave::TrajectoryRecord& traj);

}  // namespace declab::lab
