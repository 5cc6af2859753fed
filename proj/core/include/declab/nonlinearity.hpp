#pragma once

#include <functional>
#include <string>

namespace declab::semilinear {

/// Scalar restoring force f with growth exponent p and constant C:
///   f(0) = 0,  s f(s) >= 0,  |f(s)| <= C(1+|s|)^p,  |f'(s)| <= C(1+|s|)^(p-1).
/// Built-ins keep a closed-form antiderivative F (the potential density).
/// `focusing_cubic` deliberately violates the sign condition; it exists as the
/// positive control for the explosion guard.
struct Nonlinearity {
  enum class Form { zero, cubic, power, focusing_cubic, custom };

  Form form = Form::zero;
  double p = 1;
  double growth_constant = 1;
  std::string name = "zero";

  std::function<double(double)> custom_f, custom_fprime, custom_antiderivative;

  double f(double s) const;
  double fprime(double s) const;
  double antiderivative(double s) const;
  bool is_zero() const { return form == Form::zero; }

  static Nonlinearity zero();
  static Nonlinearity cubic();
  /// s |s|^(p-1); quintic-subcritical range p in (3,5).
  static Nonlinearity power(double p);
  static Nonlinearity focusing_cubic();
  static Nonlinearity custom(std::string name, double p, double growth_constant,
                             std::function<double(double)> f,
                             std::function<double(double)> fprime,
                             std::function<double(double)> antiderivative);
};

struct NonlinearityPair {
  Nonlinearity f1, f2;

  bool is_zero() const { return f1.is_zero() && f2.is_zero(); }
  static NonlinearityPair none() { return {Nonlinearity::zero(), Nonlinearity::zero()}; }
  static NonlinearityPair cubic() { return {Nonlinearity::cubic(), Nonlinearity::cubic()}; }
  static NonlinearityPair power(double p) { return {Nonlinearity::power(p), Nonlinearity::power(p)}; }
};

/// Sampled check of the structural hypotheses over [s_lo, s_hi].
struct HypothesisReport {
  bool zero_at_origin = false;
  bool sign_condition = false;
  bool growth_bound = false;
  bool derivative_growth_bound = false;
  bool potential_nonnegative = false;
  double worst_growth_ratio = 0;

  bool all() const {
    return zero_at_origin && sign_condition && growth_bound && derivative_growth_bound &&
           potential_nonnegative;
  }
};

HypothesisReport check_hypotheses(const Nonlinearity& nl, double s_lo, double s_hi,
                                  int n_samples);

}  // namespace declab::semilinear
