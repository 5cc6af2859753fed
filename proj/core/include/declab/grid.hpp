#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

namespace declab::geometry {

/// Uniform tensor grid on an interval [0,Lx] or rectangle [0,Lx]x[0,Ly] with
/// homogeneous Dirichlet boundary. Node (ix,iy) sits at (ix*hx, iy*hy),
/// flattened row-major: index = iy*nx + ix.
class GridDomain {
public:
  static GridDomain interval(double length, int nodes);
  static GridDomain rectangle(double lx, double ly, int nx, int ny);

  int dimension() const { return dim_; }
  int nx() const { return nodes_[0]; }
  int ny() const { return nodes_[1]; }
  double lx() const { return extent_[0]; }
  double ly() const { return extent_[1]; }
  double hx() const { return spacing_[0]; }
  double hy() const { return spacing_[1]; }
  std::size_t node_count() const { return static_cast<std::size_t>(nodes_[0]) * nodes_[1]; }

  std::size_t index(int ix, int iy = 0) const {
    return static_cast<std::size_t>(iy) * nodes_[0] + ix;
  }
  std::array<double, 2> position(std::size_t i) const {
    int ix = static_cast<int>(i % nodes_[0]);
    int iy = static_cast<int>(i / nodes_[0]);
    return {ix * spacing_[0], iy * spacing_[1]};
  }
  bool is_boundary(int ix, int iy = 0) const {
    if (ix == 0 || ix == nodes_[0] - 1) return true;
    return dim_ == 2 && (iy == 0 || iy == nodes_[1] - 1);
  }
  bool is_boundary(std::size_t i) const { return boundary_[i] != 0; }
  const std::vector<std::uint8_t>& boundary_mask() const { return boundary_; }

  double min_spacing() const { return dim_ == 2 ? std::min(spacing_[0], spacing_[1]) : spacing_[0]; }
  /// Trapezoid cell volume (h resp. hx*hy).
  double cell_volume() const { return dim_ == 2 ? spacing_[0] * spacing_[1] : spacing_[0]; }
  /// Hard stability limit of the explicit wave update: dt <= h_min/sqrt(d).
  double cfl_limit() const;

  bool operator==(const GridDomain& o) const {
    return dim_ == o.dim_ && nodes_ == o.nodes_ && extent_ == o.extent_;
  }

private:
  GridDomain(int dim, std::array<double, 2> extent, std::array<int, 2> nodes);

  int dim_;
  std::array<double, 2> extent_;
  std::array<int, 2> nodes_;
  std::array<double, 2> spacing_;
  std::vector<std::uint8_t> boundary_;
};

using GridPtr = std::shared_ptr<const GridDomain>;

inline GridPtr make_interval(double length, int nodes) {
  return std::make_shared<const GridDomain>(GridDomain::interval(length, nodes));
}
inline GridPtr make_rectangle(double lx, double ly, int nx, int ny) {
  return std::make_shared<const GridDomain>(GridDomain::rectangle(lx, ly, nx, ny));
}

}  // namespace declab::geometry
