#pragma once

#include <functional>
#include <vector>

namespace declab {

/// Scalar function sampled on the uniform grid s_i = i*ds, i = 0..n-1.
/// Evaluation linearly interpolates; integrals are trapezoid sums of the
/// interpolant (exact partial cells included).
struct SampledFunction {
  double ds = 0;
  std::vector<double> values;

  double horizon() const { return ds * (values.size() - 1); }
  std::size_t size() const { return values.size(); }
  double value_at(double s) const;
  /// int_0^s of the interpolant.
  double integral_to(double s) const;
  double total_integral() const;
  /// Cumulative trapezoid integral at each sample point.
  std::vector<double> prefix_integral() const;
  double max_value() const;
  double min_value() const;

  static SampledFunction from_callable(const std::function<double(double)>& f,
                                       double horizon, std::size_t n_samples);
  static SampledFunction constant(double value, double horizon, std::size_t n_samples);
  /// Piecewise-constant profile with levels[i] on [breaks[i], breaks[i+1]).
  /// Samples landing exactly on a break take the two-sided mean, which keeps
  /// trapezoid integrals of break-aligned grids exact.
  static SampledFunction piecewise_constant(const std::vector<double>& breaks,
                                            const std::vector<double>& levels,
                                            double horizon, std::size_t n_samples);
};

}  // namespace declab
