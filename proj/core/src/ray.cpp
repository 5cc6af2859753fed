#include "declab/ray.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "declab/errors.hpp"

namespace declab::rays {

namespace {

constexpr double kDirTol = 1e-12;
// Two wall hits closer than this in time collapse to a corner reflection.
constexpr double kCornerTol = 1e-13;

}  // namespace

Vec2 RayPath::position(double s) const {
  s = std::clamp(s, 0.0, horizon);
  // find last event at or before s
  Vec2 p = start, d = start_direction;
  double t0 = 0;
  if (!events.empty() && s >= events.front().time) {
    std::size_t lo = 0, hi = events.size();
    while (hi - lo > 1) {
      const std::size_t mid = (lo + hi) / 2;
      (events[mid].time <= s ? lo : hi) = mid;
    }
    p = events[lo].point;
    d = events[lo].direction;
    t0 = events[lo].time;
  }
  return {p.x + (s - t0) * d.x, p.y + (s - t0) * d.y};
}

Vec2 RayPath::direction(double s) const {
  s = std::clamp(s, 0.0, horizon);
  Vec2 d = start_direction;
  for (const auto& e : events) {
    if (e.time > s) break;
    d = e.direction;
  }
  return d;
}

RayPath trace_ray(Vec2 start, Vec2 dir, double horizon, const GridDomain& grid) {
  if (!(horizon > 0)) throw ValidationError("ray horizon must be positive");
  const int dim = grid.dimension();
  const double norm = std::sqrt(dir.x * dir.x + dir.y * dir.y);
  if (std::abs(norm - 1.0) > kDirTol)
    throw ValidationError("ray direction must be a unit vector");
  if (dim == 1 && std::abs(dir.y) > kDirTol)
    throw ValidationError("1D rays move along the x axis");

  const double lx = grid.lx();
  const double ly = dim == 2 ? grid.ly() : 0.0;
  if (!(start.x > 0 && start.x < lx) || (dim == 2 && !(start.y > 0 && start.y < ly)))
    throw ValidationError("ray start must lie strictly inside the domain");

  // Snap near-axis directions: a 1e-15 transverse component would otherwise
  // generate ~1e15 wall events before reaching the horizon.
  Vec2 d = dir;
  if (std::abs(d.x) < 1e-14) d.x = 0;
  if (std::abs(d.y) < 1e-14) d.y = 0;
  {
    const double n = std::sqrt(d.x * d.x + d.y * d.y);
    d.x /= n;
    d.y /= n;
  }

  RayPath path;
  path.start = start;
  path.start_direction = d;
  path.horizon = horizon;

  Vec2 p = start;
  double t = 0;
  while (true) {
    double tx = std::numeric_limits<double>::infinity();
    double ty = std::numeric_limits<double>::infinity();
    if (d.x > 0) tx = (lx - p.x) / d.x;
    else if (d.x < 0) tx = -p.x / d.x;
    if (dim == 2) {
      if (d.y > 0) ty = (ly - p.y) / d.y;
      else if (d.y < 0) ty = -p.y / d.y;
    }
    const double thit = std::min(tx, ty);
    if (t + thit >= horizon) return path;  // final partial segment

    Vec2 q{p.x + thit * d.x, p.y + thit * d.y};
    const bool corner = std::abs(tx - ty) <= kCornerTol * (1 + std::abs(thit));
    if (corner || tx < ty) {
      q.x = d.x > 0 ? lx : 0.0;  // land exactly on the wall
      d.x = -d.x;
    }
    if (corner || ty < tx) {
      q.y = d.y > 0 ? ly : 0.0;
      d.y = -d.y;
    }
    t += thit;
    path.events.push_back(RayEvent{q, t, d});
    p = q;
  }
}

double interpolate(const CoefficientField& field, Vec2 p) {
  const GridDomain& g = *field.grid;
  const auto& v = field.values;
  const double fx = std::clamp(p.x / g.hx(), 0.0, static_cast<double>(g.nx() - 1));
  const int ix = std::min(static_cast<int>(fx), g.nx() - 2);
  const double tx = fx - ix;
  if (g.dimension() == 1) {
    return v[ix] * (1 - tx) + v[ix + 1] * tx;
  }
  const double fy = std::clamp(p.y / g.hy(), 0.0, static_cast<double>(g.ny() - 1));
  const int iy = std::min(static_cast<int>(fy), g.ny() - 2);
  const double ty = fy - iy;
  const std::size_t i00 = g.index(ix, iy);
  const double bottom = v[i00] * (1 - tx) + v[i00 + 1] * tx;
  const double top = v[i00 + g.nx()] * (1 - tx) + v[i00 + g.nx() + 1] * tx;
  return bottom * (1 - ty) + top * ty;
}

SampledFunction coefficient_trace(const RayPath& path, const CoefficientField& field,
                                  double ds) {
  if (!(ds > 0)) throw ValidationError("trace resolution must be positive");
  const std::size_t n = static_cast<std::size_t>(std::ceil(path.horizon / ds - 1e-9)) + 1;
  SampledFunction out;
  out.ds = path.horizon / (n - 1);
  out.values.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    out.values[i] = interpolate(field, path.position(i * out.ds));
  return out;
}

}  // namespace declab::rays
