#pragma once

#include <cstdint>
#include <vector>

#include "declab/grid.hpp"
#include "declab/region.hpp"

namespace declab::geometry {

/// Nonnegative nodal coefficient (damping a or coupling b). `active` marks
/// nodes where the value is at least `floor`; on that set the field is
/// uniformly bounded below, which is what the damping arguments need.
struct CoefficientField {
  GridPtr grid;
  std::vector<double> values;
  double floor = 0;
  std::vector<std::uint8_t> active;
  double max_value = 0;

  double operator[](std::size_t i) const { return values[i]; }
  bool is_zero() const { return max_value == 0; }
  std::size_t active_count() const;
};

/// Field equal to `amplitude` on the region core, ramping to 0 across the
/// mollification collar outside it (sharp indicator when the width is 0).
/// Requires amplitude >= floor > 0; throws ValidationError("degenerate region")
/// when no grid node lands in the core.
CoefficientField build_coefficient(const RegionSpec& region, GridPtr grid,
                                   double amplitude, double floor);

/// All-zero coefficient (absent damping/coupling).
CoefficientField zero_coefficient(GridPtr grid);

/// supp(b) inside the floor-active set of a: every node with b > 0 must have
/// a >= a.floor. Throws on grid mismatch.
bool check_containment(const CoefficientField& b, const CoefficientField& a);

}  // namespace declab::geometry
