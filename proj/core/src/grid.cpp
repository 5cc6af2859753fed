#include "declab/grid.hpp"

#include <cmath>

#include "declab/errors.hpp"

namespace declab::geometry {

GridDomain::GridDomain(int dim, std::array<double, 2> extent, std::array<int, 2> nodes)
    : dim_(dim), extent_(extent), nodes_(nodes) {
  for (int d = 0; d < dim_; ++d) {
    if (nodes_[d] < 3) throw ValidationError("grid needs at least 3 nodes per axis");
    if (!(extent_[d] > 0)) throw ValidationError("grid extent must be positive");
  }
  spacing_[0] = extent_[0] / (nodes_[0] - 1);
  spacing_[1] = dim_ == 2 ? extent_[1] / (nodes_[1] - 1) : 0.0;
  boundary_.resize(node_count());
  for (int iy = 0; iy < nodes_[1]; ++iy)
    for (int ix = 0; ix < nodes_[0]; ++ix)
      boundary_[index(ix, iy)] = is_boundary(ix, iy) ? 1 : 0;
}

GridDomain GridDomain::interval(double length, int nodes) {
  return GridDomain(1, {length, 0.0}, {nodes, 1});
}

GridDomain GridDomain::rectangle(double lx, double ly, int nx, int ny) {
  return GridDomain(2, {lx, ly}, {nx, ny});
}

double GridDomain::cfl_limit() const {
  return min_spacing() / std::sqrt(static_cast<double>(dim_));
}

}  // namespace declab::geometry
