#pragma once

#include <vector>

#include "declab/coefficient.hpp"
#include "declab/sampled.hpp"

namespace declab::rays {

using geometry::CoefficientField;
using geometry::GridDomain;

struct Vec2 {
  double x = 0, y = 0;
};

/// One wall reflection: where, when, and the outgoing direction.
struct RayEvent {
  Vec2 point;
  double time;
  Vec2 direction;
};

/// Unit-speed billiard trajectory in the rectangle, stored event-by-event
/// (piecewise linear; arc length equals elapsed time).
struct RayPath {
  Vec2 start;
  Vec2 start_direction;
  double horizon = 0;
  std::vector<RayEvent> events;

  Vec2 position(double s) const;
  Vec2 direction(double s) const;
};

/// Exact event-driven specular tracing (no time discretization). Corners
/// reflect both components. Preconditions: |dir| = 1 within 1e-12, start
/// strictly inside, horizon > 0. In 1D the y components are ignored and the
/// direction must be (+-1, 0).
RayPath trace_ray(Vec2 start, Vec2 dir, double horizon, const GridDomain& grid);

/// Coefficient values seen along the ray, sampled every ds arc length
/// (multilinear interpolation of the nodal field).
SampledFunction coefficient_trace(const RayPath& path, const CoefficientField& field,
                                  double ds);

/// Field value at an arbitrary point (bilinear/linear interpolation, clamped
/// to the domain).
double interpolate(const CoefficientField& field, Vec2 p);

}  // namespace declab::rays
