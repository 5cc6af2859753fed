#pragma once

#include <vector>

#include "declab/grid.hpp"

namespace declab::wave {

using geometry::GridDomain;
using geometry::GridPtr;

/// Nodal snapshot of the coupled system at one time: displacements u, v and
/// velocities ut, vt. Boundary nodes carry 0 in all four fields (homogeneous
/// Dirichlet); the stepper never writes them.
struct SystemState {
  GridPtr grid;
  std::vector<double> u, v, ut, vt;
  double time = 0;

  static SystemState zero(GridPtr grid);
  /// Zero the boundary rows of all four fields.
  void enforce_dirichlet();
  void scale(double s);
};

struct EnergyBreakdown {
  double kinetic_u = 0, kinetic_v = 0;
  double elastic_u = 0, elastic_v = 0;
  double nonlinear_potential = 0;
  double total = 0;
};

/// Squared energy-space norm: |grad u|^2 + |grad v|^2 + |ut|^2 + |vt|^2 with
/// the same quadrature as the energy (so the linear energy is exactly half).
double h_norm_sq(const SystemState& s);
double h_norm(const SystemState& s);
/// Energy-space norm of the difference of two states on the same grid.
double h_norm_diff(const SystemState& a, const SystemState& b);

}  // namespace declab::wave
