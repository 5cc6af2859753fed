#pragma once

#include <array>
#include <string>
#include <vector>

#include "declab/grid.hpp"

namespace declab::geometry {

/// Closed axis-aligned box; in 1D only the x components are used.
struct Box {
  std::array<double, 2> lo{0, 0};
  std::array<double, 2> hi{0, 0};
};

enum class Side { left, right, bottom, top };

/// Geometric support of a damping/coupling coefficient: a union of boxes or a
/// collar along selected domain sides, optionally with a smoothstep ramp of
/// the given width attached outside the core.
class RegionSpec {
public:
  enum class Kind { boxes, side_collar, whole_domain };

  static RegionSpec box1d(double lo, double hi, double mollification = 0);
  static RegionSpec box2d(std::array<double, 2> lo, std::array<double, 2> hi,
                          double mollification = 0);
  static RegionSpec union_of(std::vector<Box> boxes, double mollification = 0);
  /// Collar of the given width along every domain side.
  static RegionSpec boundary_strip(double width, double mollification = 0);
  /// Collar along a subset of sides (e.g. two adjacent sides).
  static RegionSpec side_collar(std::vector<Side> sides, double width,
                                double mollification = 0);
  static RegionSpec whole_domain();

  Kind kind() const { return kind_; }
  double mollification() const { return mollification_; }
  double width() const { return width_; }
  const std::vector<Side>& sides() const { return sides_; }

  /// Resolve to concrete boxes on a given domain (collars need extents).
  std::vector<Box> resolve(const GridDomain& grid) const;

  /// Euclidean distance from a point to the region core (0 inside).
  double distance(std::array<double, 2> p, const GridDomain& grid) const;
  bool contains(std::array<double, 2> p, const GridDomain& grid) const;

  std::string describe() const;

private:
  Kind kind_ = Kind::boxes;
  std::vector<Box> boxes_;
  std::vector<Side> sides_;
  double width_ = 0;
  double mollification_ = 0;
};

/// Distance from p to a box union; 0 when p lies in some box.
double distance_to_boxes(std::array<double, 2> p, const std::vector<Box>& boxes, int dim);

/// C^1 ramp: 0 for t<=0, t^2(3-2t) on [0,1], 1 for t>=1.
double smoothstep(double t);

/// Membership slack for sharp indicators, so nodes sitting on a box face
/// (up to rounding in ix*h) count as inside.
inline constexpr double kGeomTol = 1e-12;

}  // namespace declab::geometry
