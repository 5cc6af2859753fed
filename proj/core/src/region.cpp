#include "declab/region.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "declab/errors.hpp"

namespace declab::geometry {

double smoothstep(double t) {
  if (t <= 0) return 0;
  if (t >= 1) return 1;
  return t * t * (3 - 2 * t);
}

double distance_to_boxes(std::array<double, 2> p, const std::vector<Box>& boxes, int dim) {
  double best = std::numeric_limits<double>::infinity();
  for (const Box& b : boxes) {
    double d2 = 0;
    for (int k = 0; k < dim; ++k) {
      double d = std::max({b.lo[k] - p[k], p[k] - b.hi[k], 0.0});
      d2 += d * d;
    }
    best = std::min(best, d2);
  }
  return std::sqrt(best);
}

RegionSpec RegionSpec::box1d(double lo, double hi, double mollification) {
  return union_of({Box{{lo, 0}, {hi, 0}}}, mollification);
}

RegionSpec RegionSpec::box2d(std::array<double, 2> lo, std::array<double, 2> hi,
                             double mollification) {
  return union_of({Box{lo, hi}}, mollification);
}

RegionSpec RegionSpec::union_of(std::vector<Box> boxes, double mollification) {
  if (boxes.empty()) throw ValidationError("region needs at least one box");
  if (mollification < 0) throw ValidationError("mollification width must be >= 0");
  RegionSpec r;
  r.kind_ = Kind::boxes;
  r.boxes_ = std::move(boxes);
  r.mollification_ = mollification;
  for (const Box& b : r.boxes_)
    for (int k = 0; k < 2; ++k)
      if (b.hi[k] < b.lo[k]) throw ValidationError("box has hi < lo");
  return r;
}

RegionSpec RegionSpec::boundary_strip(double width, double mollification) {
  return side_collar({Side::left, Side::right, Side::bottom, Side::top}, width, mollification);
}

RegionSpec RegionSpec::side_collar(std::vector<Side> sides, double width, double mollification) {
  if (sides.empty()) throw ValidationError("collar needs at least one side");
  if (!(width > 0)) throw ValidationError("collar width must be positive");
  if (mollification < 0) throw ValidationError("mollification width must be >= 0");
  RegionSpec r;
  r.kind_ = Kind::side_collar;
  r.sides_ = std::move(sides);
  r.width_ = width;
  r.mollification_ = mollification;
  return r;
}

RegionSpec RegionSpec::whole_domain() {
  RegionSpec r;
  r.kind_ = Kind::whole_domain;
  return r;
}

std::vector<Box> RegionSpec::resolve(const GridDomain& grid) const {
  const double lx = grid.lx();
  const double ly = grid.dimension() == 2 ? grid.ly() : 0.0;
  switch (kind_) {
    case Kind::boxes:
      return boxes_;
    case Kind::whole_domain:
      return {Box{{0, 0}, {lx, ly}}};
    case Kind::side_collar: {
      std::vector<Box> out;
      for (Side s : sides_) {
        switch (s) {
          case Side::left:   out.push_back(Box{{0, 0}, {width_, ly}}); break;
          case Side::right:  out.push_back(Box{{lx - width_, 0}, {lx, ly}}); break;
          case Side::bottom:
            if (grid.dimension() != 2) throw ValidationError("bottom/top collar needs a 2D domain");
            out.push_back(Box{{0, 0}, {lx, width_}});
            break;
          case Side::top:
            if (grid.dimension() != 2) throw ValidationError("bottom/top collar needs a 2D domain");
            out.push_back(Box{{0, ly - width_}, {lx, ly}});
            break;
        }
      }
      return out;
    }
  }
  throw ValidationError("unknown region kind");
}

double RegionSpec::distance(std::array<double, 2> p, const GridDomain& grid) const {
  return distance_to_boxes(p, resolve(grid), grid.dimension());
}

bool RegionSpec::contains(std::array<double, 2> p, const GridDomain& grid) const {
  return distance(p, grid) <= kGeomTol;
}

std::string RegionSpec::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::whole_domain:
      os << "whole domain";
      break;
    case Kind::side_collar: {
      os << "collar(width=" << width_ << ", sides=";
      const char* names[] = {"left", "right", "bottom", "top"};
      for (std::size_t i = 0; i < sides_.size(); ++i)
        os << (i ? "+" : "") << names[static_cast<int>(sides_[i])];
      os << ")";
      break;
    }
    case Kind::boxes:
      os << "boxes(" << boxes_.size() << ")";
      break;
  }
  if (mollification_ > 0) os << " mollified " << mollification_;
  return os.str();
}

}  // namespace declab::geometry
