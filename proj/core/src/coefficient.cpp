#include "declab/coefficient.hpp"

#include <algorithm>

#include "declab/errors.hpp"

namespace declab::geometry {

std::size_t CoefficientField::active_count() const {
  return static_cast<std::size_t>(std::count(active.begin(), active.end(), std::uint8_t{1}));
}

CoefficientField build_coefficient(const RegionSpec& region, GridPtr grid,
                                   double amplitude, double floor) {
  if (!(floor > 0)) throw ValidationError("coefficient floor must be positive");
  if (amplitude < floor) throw ValidationError("coefficient amplitude must be >= floor");

  const auto boxes = region.resolve(*grid);
  const double m = region.mollification();
  const std::size_t n = grid->node_count();

  CoefficientField f;
  f.grid = grid;
  f.floor = floor;
  f.values.resize(n);
  f.active.resize(n);

  std::size_t core_nodes = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = distance_to_boxes(grid->position(i), boxes, grid->dimension());
    double v;
    if (d <= kGeomTol) {
      v = amplitude;
      ++core_nodes;
    } else if (m > 0 && d < m) {
      v = amplitude * smoothstep(1.0 - d / m);
    } else {
      v = 0.0;
    }
    f.values[i] = v;
    f.active[i] = v >= floor * (1.0 - 1e-12) ? 1 : 0;
    f.max_value = std::max(f.max_value, v);
  }
  if (core_nodes == 0) throw ValidationError("degenerate region");
  return f;
}

CoefficientField zero_coefficient(GridPtr grid) {
  CoefficientField f;
  f.grid = grid;
  f.values.assign(grid->node_count(), 0.0);
  f.active.assign(grid->node_count(), 0);
  f.floor = 0;
  f.max_value = 0;
  return f;
}

bool check_containment(const CoefficientField& b, const CoefficientField& a) {
  if (!a.grid || !b.grid || !(*a.grid == *b.grid))
    throw ValidationError("containment check needs coefficients on the same grid");
  for (std::size_t i = 0; i < b.values.size(); ++i)
    if (b.values[i] > 0 && a.values[i] < a.floor * (1.0 - 1e-12)) return false;
  return true;
}

}  // namespace declab::geometry
