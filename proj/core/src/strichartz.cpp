#include "declab/strichartz.hpp"

#include <algorithm>
#include <cmath>

#include "declab/errors.hpp"

namespace declab::semilinear {

namespace {

double node_weight(const wave::GridDomain& g, std::size_t i) {
  double w = g.cell_volume();
  const int ix = static_cast<int>(i % g.nx());
  const int iy = static_cast<int>(i / g.nx());
  if (ix == 0 || ix == g.nx() - 1) w *= 0.5;
  if (g.dimension() == 2 && (iy == 0 || iy == g.ny() - 1)) w *= 0.5;
  return w;
}

double space_lr(const std::vector<double>& f, const wave::GridDomain& g, double r) {
  double acc = 0;
  for (std::size_t i = 0; i < f.size(); ++i)
    acc += node_weight(g, i) * std::pow(std::abs(f[i]), r);
  return std::pow(acc, 1.0 / r);
}

// Trapezoid in time of phi(t)^q, then the q-th root.
double time_lq(const std::vector<double>& times, const std::vector<double>& phi, double q) {
  double acc = 0;
  for (std::size_t k = 0; k + 1 < times.size(); ++k)
    acc += 0.5 * (times[k + 1] - times[k]) *
           (std::pow(phi[k], q) + std::pow(phi[k + 1], q));
  return std::pow(acc, 1.0 / q);
}

void require_fields(const TrajectoryRecord& traj) {
  if (!traj.has_fields || traj.u_fields.size() != traj.size())
    throw ValidationError("trajectory was recorded without displacement fields");
}

}  // namespace

StrichartzPair::StrichartzPair(double q_, double r_) : q(q_), r(r_) {
  if (std::abs(1.0 / q + 3.0 / r - 0.5) > 1e-12)
    throw ValidationError("exponents violate 1/q + 3/r = 1/2");
  if (q < 3.5 - 1e-12) throw ValidationError("exponent q must be >= 7/2");
}

StrichartzPair admissible_pair(double p) {
  if (!(p > 3.0) || !(p < 5.0))
    throw ValidationError("admissible pair defined for growth exponent in (3,5)");
  return StrichartzPair(2.0 * p / (p - 3.0), 2.0 * p);
}

double lq_lr_norm(const std::vector<double>& times,
                  const std::vector<std::vector<double>>& fields,
                  const wave::GridDomain& grid, double q, double r) {
  std::vector<double> phi(fields.size());
  for (std::size_t k = 0; k < fields.size(); ++k) phi[k] = space_lr(fields[k], grid, r);
  return time_lq(times, phi, q);
}

double strichartz_norm(const TrajectoryRecord& traj, const StrichartzPair& pair) {
  require_fields(traj);
  return lq_lr_norm(traj.times, traj.u_fields, *traj.grid, pair.q, pair.r) +
         lq_lr_norm(traj.times, traj.v_fields, *traj.grid, pair.q, pair.r);
}

double x_norm(const TrajectoryRecord& traj, const StrichartzPair& pair) {
  require_fields(traj);
  const double u_st = lq_lr_norm(traj.times, traj.u_fields, *traj.grid, pair.q, pair.r);
  const double v_st = lq_lr_norm(traj.times, traj.v_fields, *traj.grid, pair.q, pair.r);
  double u_h1 = 0, v_h1 = 0, ut_l2 = 0, vt_l2 = 0;
  for (std::size_t k = 0; k < traj.size(); ++k) {
    u_h1 = std::max(u_h1, traj.u_h1[k]);
    v_h1 = std::max(v_h1, traj.v_h1[k]);
    ut_l2 = std::max(ut_l2, traj.ut_l2[k]);
    vt_l2 = std::max(vt_l2, traj.vt_l2[k]);
  }
  return std::max(u_st, u_h1) + std::max(v_st, v_h1) + ut_l2 + vt_l2;
}

double force_l1l2_norm(const TrajectoryRecord& traj, const NonlinearityPair& fpair) {
  require_fields(traj);
  const auto& g = *traj.grid;
  std::vector<double> phi(traj.size());
  for (std::size_t k = 0; k < traj.size(); ++k) {
    double acc1 = 0, acc2 = 0;
    for (std::size_t i = 0; i < traj.u_fields[k].size(); ++i) {
      const double w = node_weight(g, i);
      const double f1 = fpair.f1.f(traj.u_fields[k][i]);
      const double f2 = fpair.f2.f(traj.v_fields[k][i]);
      acc1 += w * f1 * f1;
      acc2 += w * f2 * f2;
    }
    phi[k] = std::sqrt(acc1) + std::sqrt(acc2);
  }
  double acc = 0;
  for (std::size_t k = 0; k + 1 < traj.size(); ++k)
    acc += 0.5 * (traj.times[k + 1] - traj.times[k]) * (phi[k] + phi[k + 1]);
  return acc;
}

}  // namespace declab::semilinear
