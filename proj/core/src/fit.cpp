#include "declab/fit.hpp"

#include <cmath>

#include "declab/errors.hpp"

namespace declab::lab {

DecayFit fit_decay(const std::vector<double>& times, const std::vector<double>& energies) {
  if (times.size() != energies.size())
    throw ValidationError("decay fit: times/energies length mismatch");
  if (energies.empty() || !(energies.front() > 0))
    throw ValidationError("decay fit needs positive initial energy");

  const double floor = 1e-12 * energies.front();
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < energies.size(); ++i)
    if (energies[i] > floor) kept.push_back(i);

  const std::size_t start = kept.size() - kept.size() * 6 / 10;  // last 60%
  std::vector<std::size_t> window(kept.begin() + static_cast<std::ptrdiff_t>(start),
                                  kept.end());
  if (window.size() < 10)
    throw ValidationError("decay fit window has fewer than 10 samples");

  double st = 0, sy = 0;
  for (auto i : window) {
    st += times[i];
    sy += std::log(energies[i]);
  }
  const double n = static_cast<double>(window.size());
  const double mt = st / n, my = sy / n;
  double stt = 0, sty = 0, syy = 0;
  for (auto i : window) {
    const double dt = times[i] - mt;
    const double dy = std::log(energies[i]) - my;
    stt += dt * dt;
    sty += dt * dy;
    syy += dy * dy;
  }
  if (stt == 0) throw ValidationError("decay fit window has zero time spread");

  const double slope = sty / stt;
  DecayFit fit;
  fit.beta = -slope;
  fit.intercept = my - slope * mt;
  fit.t_lo = times[window.front()];
  fit.t_hi = times[window.back()];
  fit.n_points = static_cast<int>(window.size());

  const double ss_res = syy - sty * sty / stt;
  // Flat data (machine-level variance) is a perfect fit, not a degenerate one.
  fit.r_squared = syy <= 1e-20 ? 1.0 : 1.0 - ss_res / syy;
  return fit;
}

DecayFit fit_decay(const wave::TrajectoryRecord& traj) {
  std::vector<double> e;
  e.reserve(traj.size());
  for (const auto& b : traj.energies) e.push_back(b.total);
  return fit_decay(traj.times, e);
}

}  // namespace declab::lab
