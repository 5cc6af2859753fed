#include "declab/sampled.hpp"

#include <algorithm>
#include <cmath>

#include "declab/errors.hpp"

namespace declab {

double SampledFunction::value_at(double s) const {
  if (values.empty()) return 0;
  const double x = std::clamp(s / ds, 0.0, static_cast<double>(values.size() - 1));
  const std::size_t i = std::min(static_cast<std::size_t>(x), values.size() - 2);
  const double t = x - i;
  return values[i] * (1 - t) + values[i + 1] * t;
}

double SampledFunction::integral_to(double s) const {
  if (values.size() < 2) return 0;
  const double x = std::clamp(s / ds, 0.0, static_cast<double>(values.size() - 1));
  const std::size_t full = static_cast<std::size_t>(x);
  double acc = 0;
  for (std::size_t i = 0; i < full; ++i) acc += 0.5 * ds * (values[i] + values[i + 1]);
  if (full + 1 < values.size()) {
    const double t = x - full;  // fractional cell, exact for the interpolant
    const double v0 = values[full], v1 = values[full + 1];
    acc += ds * (v0 * t + 0.5 * (v1 - v0) * t * t);
  }
  return acc;
}

double SampledFunction::total_integral() const {
  double acc = 0;
  for (std::size_t i = 0; i + 1 < values.size(); ++i)
    acc += 0.5 * ds * (values[i] + values[i + 1]);
  return acc;
}

std::vector<double> SampledFunction::prefix_integral() const {
  std::vector<double> out(values.size(), 0.0);
  for (std::size_t i = 0; i + 1 < values.size(); ++i)
    out[i + 1] = out[i] + 0.5 * ds * (values[i] + values[i + 1]);
  return out;
}

double SampledFunction::max_value() const {
  return values.empty() ? 0 : *std::max_element(values.begin(), values.end());
}

double SampledFunction::min_value() const {
  return values.empty() ? 0 : *std::min_element(values.begin(), values.end());
}

SampledFunction SampledFunction::from_callable(const std::function<double(double)>& f,
                                               double horizon, std::size_t n_samples) {
  if (n_samples < 2) throw ValidationError("sampled function needs at least 2 samples");
  if (!(horizon > 0)) throw ValidationError("sampled function needs a positive horizon");
  SampledFunction s;
  s.ds = horizon / (n_samples - 1);
  s.values.resize(n_samples);
  for (std::size_t i = 0; i < n_samples; ++i) s.values[i] = f(i * s.ds);
  return s;
}

SampledFunction SampledFunction::constant(double value, double horizon,
                                          std::size_t n_samples) {
  return from_callable([value](double) { return value; }, horizon, n_samples);
}

SampledFunction SampledFunction::piecewise_constant(const std::vector<double>& breaks,
                                                    const std::vector<double>& levels,
                                                    double horizon, std::size_t n_samples) {
  if (breaks.size() != levels.size() + 1)
    throw ValidationError("piecewise profile needs one more break than levels");
  auto eval = [&](double s) {
    const double eps = 1e-13 * (1 + std::abs(horizon));
    auto level_at = [&](double x) {
      if (x < breaks.front() || x >= breaks.back()) return 0.0;
      for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
        if (x < breaks[i + 1]) return levels[i];
      return 0.0;
    };
    // A sample sitting exactly on an interior break takes the two-sided mean
    // (keeps trapezoid sums exact); at the domain ends use the one-sided level.
    for (double b : breaks)
      if (std::abs(s - b) <= eps) {
        if (b <= eps) return level_at(b + 2 * eps);
        if (b >= horizon - eps) return level_at(b - 2 * eps);
        return 0.5 * (level_at(b - 2 * eps) + level_at(b + 2 * eps));
      }
    return level_at(s);
  };
  return from_callable(eval, horizon, n_samples);
}

}  // namespace declab
