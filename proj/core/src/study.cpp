#include "declab/study.hpp"

#include <algorithm>
#include <limits>

#include "declab/errors.hpp"

namespace declab::lab {

ObservabilityEstimate observability_ratio(const wave::TrajectoryRecord& traj, double at_time) {
  if (traj.size() == 0) throw ValidationError("empty trajectory");
  std::size_t k = 0;
  while (k + 1 < traj.size() && traj.times[k + 1] <= at_time) ++k;

  ObservabilityEstimate est;
  est.energy0 = traj.initial_energy();
  est.absorbed = traj.dissipation_cum[k];
  est.at_time = traj.times[k];
  est.finite = est.absorbed > 0;
  est.ratio = est.finite ? est.energy0 / est.absorbed
                         : std::numeric_limits<double>::infinity();
  return est;
}

DecaySurvey linear_decay_survey(const ScenarioConfig& base, int n_draws, std::uint64_t seed) {
  if (n_draws < 1) throw ValidationError("survey needs at least one draw");
  ScenarioConfig cfg = base;
  cfg.nonlinearity = {};  // linear semigroup only
  cfg.data.kind = "random_band";

  DecaySurvey survey;
  survey.min_beta = std::numeric_limits<double>::infinity();
  survey.min_r_squared = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n_draws; ++i) {
    cfg.data.seed = seed + static_cast<std::uint64_t>(i);
    const auto traj = run_scenario(build_scenario(cfg));
    const auto fit = fit_decay(traj);
    survey.min_beta = std::min(survey.min_beta, fit.beta);
    survey.min_r_squared = std::min(survey.min_r_squared, fit.r_squared);
    survey.fits.push_back(fit);
  }
  return survey;
}

}  // namespace declab::lab
