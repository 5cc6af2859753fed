#pragma once

#include "declab/coefficient.hpp"
#include "declab/state.hpp"

namespace declab::wave {

using geometry::CoefficientField;

/// 3-point (1D) / 5-point (2D) Dirichlet Laplacian; boundary rows are zero.
std::vector<double> laplacian(const std::vector<double>& f, const GridDomain& grid);
void laplacian_into(std::vector<double>& out, const std::vector<double>& f,
                    const GridDomain& grid);

/// Scratch buffers so repeated stepping does not allocate.
struct StepWorkspace {
  std::vector<double> lu, lv, fu, fv, lu1, lv1;
  void resize(std::size_t n);
};

/// One step of the coupled system
///   utt = Lu - a ut - b vt + G1,   vtt = Lv + b ut + G2
/// (sources given at the midpoint time). Leapfrog/Verlet on the wave part;
/// the velocity update treats the (a,b) terms implicitly at the midpoint,
/// solving per node
///   (I + dt/2 [[a, b], [-b, 0]]) w_new = rhs,
/// whose determinant 1 + (dt/2)a + (dt/2 b)^2 >= 1 never vanishes. The skew
/// b-coupling then exchanges energy between the components exactly (to
/// quadrature order) and the a-term is dissipative for any dt.
/// Reduces to plain Verlet when a = b = 0 and G = 0.
///
/// Throws ValidationError("unstable step size") when dt exceeds the
/// stability limit h_min/sqrt(d).
SystemState step_linear(const SystemState& state, const CoefficientField& a,
                        const CoefficientField& b, const std::vector<double>& g1,
                        const std::vector<double>& g2, double dt);

/// In-place variant used by the runners. g1/g2 may be null (no sources).
void step_linear_inplace(SystemState& state, const CoefficientField& a,
                         const CoefficientField& b, const double* g1, const double* g2,
                         double dt, StepWorkspace& ws);

}  // namespace declab::wave
