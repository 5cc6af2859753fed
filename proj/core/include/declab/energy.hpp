#pragma once

#include "declab/coefficient.hpp"
#include "declab/nonlinearity.hpp"
#include "declab/state.hpp"

namespace declab::wave {

using geometry::CoefficientField;
using semilinear::NonlinearityPair;

/// Energy of a state:
///   1/2 (|grad u|^2 + |ut|^2 + |grad v|^2 + |vt|^2) + int F1(u) + F2(v).
/// Elastic terms use face-midpoint gradients, the quadrature generated by the
/// 3/5-point stencil itself (summation by parts), so that in continuous time
/// the semi-discrete energy balance d/dt E = -int a |ut|^2 is exact and the
/// reported identity residual measures pure time discretization error.
/// Kinetic and potential terms use the trapezoid rule.
EnergyBreakdown energy(const SystemState& s, const NonlinearityPair* fpair = nullptr);

/// int_domain F1(u) + F2(v) by the trapezoid rule (no state validity checks;
/// usable as a raw quadrature).
double nonlinear_potential(const std::vector<double>& u, const std::vector<double>& v,
                           const NonlinearityPair& fpair, const GridDomain& grid);

/// Instantaneous dissipation int a |ut|^2, trapezoid rule.
double dissipation_rate(const SystemState& s, const CoefficientField& a);

}  // namespace declab::wave
