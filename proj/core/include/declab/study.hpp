#pragma once

#include <cstdint>
#include <vector>

#include "declab/fit.hpp"
#include "declab/scenario.hpp"

namespace declab::lab {

/// Empirical observability quotient E(0) / (absorbed energy by time t). The
/// quotient is nonincreasing in t by construction; `finite` is false while
/// nothing has been absorbed yet.
struct ObservabilityEstimate {
  double energy0 = 0;
  double absorbed = 0;
  double ratio = 0;
  bool finite = false;
  double at_time = 0;
};

/// Evaluate at the latest recorded sample with time <= at_time.
ObservabilityEstimate observability_ratio(const wave::TrajectoryRecord& traj, double at_time);

/// Linearized runs of `base` over n_draws band-limited random data (seeds
/// seed, seed+1, ...), each fitted for its decay rate.
struct DecaySurvey {
  std::vector<DecayFit> fits;
  double min_beta = 0;
  double min_r_squared = 0;
};

DecaySurvey linear_decay_survey(const ScenarioConfig& base, int n_draws, std::uint64_t seed);

}  // namespace declab::lab
