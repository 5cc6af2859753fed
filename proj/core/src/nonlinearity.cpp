#include "declab/nonlinearity.hpp"

#include <cmath>

#include "declab/errors.hpp"

namespace declab::semilinear {

double Nonlinearity::f(double s) const {
  switch (form) {
    case Form::zero: return 0.0;
    case Form::cubic: return s * s * s;
    case Form::power: return s * std::pow(std::abs(s), p - 1);
    case Form::focusing_cubic: return -s * s * s;
    case Form::custom: return custom_f(s);
  }
  return 0.0;
}

double Nonlinearity::fprime(double s) const {
  switch (form) {
    case Form::zero: return 0.0;
    case Form::cubic: return 3 * s * s;
    case Form::power: return p * std::pow(std::abs(s), p - 1);
    case Form::focusing_cubic: return -3 * s * s;
    case Form::custom: return custom_fprime(s);
  }
  return 0.0;
}

double Nonlinearity::antiderivative(double s) const {
  switch (form) {
    case Form::zero: return 0.0;
    case Form::cubic: return 0.25 * s * s * s * s;
    case Form::power: return std::pow(std::abs(s), p + 1) / (p + 1);
    case Form::focusing_cubic: return -0.25 * s * s * s * s;
    case Form::custom: return custom_antiderivative(s);
  }
  return 0.0;
}

Nonlinearity Nonlinearity::zero() { return Nonlinearity{}; }

Nonlinearity Nonlinearity::cubic() {
  Nonlinearity n;
  n.form = Form::cubic;
  n.p = 3;
  n.growth_constant = 3;  // covers |f'| = 3s^2 as well
  n.name = "cubic";
  return n;
}

Nonlinearity Nonlinearity::power(double p) {
  if (!(p > 3.0) || !(p < 5.0))
    throw ValidationError("power nonlinearity exponent must lie in (3,5)");
  Nonlinearity n;
  n.form = Form::power;
  n.p = p;
  n.growth_constant = p;
  n.name = "power";
  return n;
}

Nonlinearity Nonlinearity::focusing_cubic() {
  Nonlinearity n;
  n.form = Form::focusing_cubic;
  n.p = 3;
  n.growth_constant = 3;
  n.name = "focusing_cubic";
  return n;
}

Nonlinearity Nonlinearity::custom(std::string name, double p, double growth_constant,
                                  std::function<double(double)> f,
                                  std::function<double(double)> fprime,
                                  std::function<double(double)> antiderivative) {
  Nonlinearity n;
  n.form = Form::custom;
  n.p = p;
  n.growth_constant = growth_constant;
  n.name = std::move(name);
  n.custom_f = std::move(f);
  n.custom_fprime = std::move(fprime);
  n.custom_antiderivative = std::move(antiderivative);
  return n;
}

HypothesisReport check_hypotheses(const Nonlinearity& nl, double s_lo, double s_hi,
                                  int n_samples) {
  HypothesisReport r;
  r.zero_at_origin = nl.f(0.0) == 0.0;
  r.sign_condition = true;
  r.growth_bound = true;
  r.derivative_growth_bound = true;
  r.potential_nonnegative = true;

  const double C = nl.growth_constant;
  for (int i = 0; i < n_samples; ++i) {
    const double s = s_lo + (s_hi - s_lo) * i / (n_samples - 1);
    const double fs = nl.f(s);
    if (s * fs < 0) r.sign_condition = false;
    const double cap = C * std::pow(1 + std::abs(s), nl.p);
    if (std::abs(fs) > cap) r.growth_bound = false;
    if (cap > 0) r.worst_growth_ratio = std::max(r.worst_growth_ratio, std::abs(fs) / cap);
    if (std::abs(nl.fprime(s)) > C * std::pow(1 + std::abs(s), nl.p - 1))
      r.derivative_growth_bound = false;
    if (nl.antiderivative(s) < 0) r.potential_nonnegative = false;
  }
  return r;
}

}  // namespace declab::semilinear
