#pragma once

#include "declab/trajectory.hpp"

namespace declab::semilinear {

using wave::TrajectoryRecord;

/// Space-time exponents with 1/q + 3/r = 1/2 and q >= 7/2.
struct StrichartzPair {
  double q, r;
  StrichartzPair(double q, double r);
};

/// The exponent pair tied to growth p in (3,5): q = 2p/(p-3), r = 2p.
/// Satisfies the admissibility identity algebraically.
StrichartzPair admissible_pair(double p);

/// Discrete L^q_t L^r_x norm of one displacement history: trapezoid in time
/// over the samples, trapezoid-weighted node quadrature in space.
double lq_lr_norm(const std::vector<double>& times,
                  const std::vector<std::vector<double>>& fields,
                  const wave::GridDomain& grid, double q, double r);

/// Sum of the u and v contributions; requires a trajectory with fields.
double strichartz_norm(const TrajectoryRecord& traj, const StrichartzPair& pair);

/// Solution-space norm of a trajectory: for each displacement component the
/// max of its L^q L^r norm and its sup-in-time H1 seminorm, summed over
/// components, plus the sup-in-time L2 norms of the velocities.
double x_norm(const TrajectoryRecord& traj, const StrichartzPair& pair);

/// ||f1(u)||_{L^1_t L^2_x} + ||f2(v)||_{L^1_t L^2_x} along a trajectory.
double force_l1l2_norm(const TrajectoryRecord& traj, const NonlinearityPair& fpair);

}  // namespace declab::semilinear
