#include "declab/gcc.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "declab/errors.hpp"

namespace declab::rays {

namespace {

struct Interval {
  double lo, hi;
};

// Clip boxes to the domain and keep the nonempty ones.
std::vector<Box> clip_boxes(const std::vector<Box>& boxes, const GridDomain& g) {
  const double lx = g.lx();
  const double ly = g.dimension() == 2 ? g.ly() : 0.0;
  std::vector<Box> out;
  for (Box b : boxes) {
    b.lo[0] = std::max(b.lo[0], 0.0);
    b.hi[0] = std::min(b.hi[0], lx);
    if (b.lo[0] > b.hi[0]) continue;
    if (g.dimension() == 2) {
      b.lo[1] = std::max(b.lo[1], 0.0);
      b.hi[1] = std::min(b.hi[1], ly);
      if (b.lo[1] > b.hi[1]) continue;
    }
    out.push_back(b);
  }
  return out;
}

std::vector<Interval> merge(std::vector<Interval> v) {
  std::sort(v.begin(), v.end(), [](auto a, auto b) { return a.lo < b.lo; });
  std::vector<Interval> out;
  for (const auto& i : v) {
    if (!out.empty() && i.lo <= out.back().hi + geometry::kGeomTol)
      out.back().hi = std::max(out.back().hi, i.hi);
    else
      out.push_back(i);
  }
  return out;
}

// Worst first-entry time into a union of intervals for the unit-speed folded
// flow on [0, L], over all interior starts and both directions. Exact: the
// entry time is piecewise linear in the start, so its sup over each direction
// is attained in the limit at interval endpoints (or the domain ends).
struct WorstEntry {
  double time;
  double start;
  int dir;
};

WorstEntry worst_entry_time(const std::vector<Interval>& iv, double L) {
  auto entry_up = [&](double y0) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& j : iv) {
      if (y0 > j.lo && y0 < j.hi) return 0.0;
      if (j.lo >= y0) best = std::min(best, j.lo - y0);
      else best = std::min(best, 2 * L - y0 - j.hi);
    }
    return best;
  };
  auto entry_down = [&](double y0) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& j : iv) {
      if (y0 > j.lo && y0 < j.hi) return 0.0;
      if (j.hi <= y0) best = std::min(best, y0 - j.hi);
      else best = std::min(best, y0 + j.lo);
    }
    return best;
  };
  std::vector<double> candidates{0.0, L};
  for (const auto& j : iv) {
    candidates.push_back(j.lo);
    candidates.push_back(j.hi);
  }
  WorstEntry w{0, L / 2, +1};
  for (double c : candidates) {
    const double up = entry_up(c), down = entry_down(c);
    if (up > w.time && std::isfinite(up)) w = {up, c, +1};
    if (down > w.time && std::isfinite(down)) w = {down, c, -1};
  }
  return w;
}

}  // namespace

double first_hit_time(const RayPath& path, const std::vector<Box>& boxes, int dim) {
  Vec2 p = path.start, d = path.start_direction;
  double t0 = 0;
  for (std::size_t k = 0; k <= path.events.size(); ++k) {
    const double t1 = k < path.events.size() ? path.events[k].time : path.horizon;
    const double len = t1 - t0;
    double best = std::numeric_limits<double>::infinity();
    for (const Box& b : boxes) {
      double enter = 0, exit = len;
      bool ok = true;
      for (int ax = 0; ax < dim && ok; ++ax) {
        const double pa = ax == 0 ? p.x : p.y;
        const double da = ax == 0 ? d.x : d.y;
        if (da == 0) {
          ok = pa >= b.lo[ax] && pa <= b.hi[ax];
        } else {
          double u = (b.lo[ax] - pa) / da;
          double v = (b.hi[ax] - pa) / da;
          if (u > v) std::swap(u, v);
          enter = std::max(enter, u);
          exit = std::min(exit, v);
        }
      }
      if (ok && enter <= exit) best = std::min(best, enter);
    }
    if (best <= len) return t0 + best;
    if (k < path.events.size()) {
      p = path.events[k].point;
      d = path.events[k].direction;
      t0 = t1;
    }
  }
  return std::numeric_limits<double>::infinity();
}

GccReport gcc_verify(const RegionSpec& region, const GridDomain& grid, int n_samples,
                     double horizon, std::uint64_t seed) {
  if (n_samples < 1) throw ValidationError("gcc check needs at least one sample ray");
  if (!(horizon > 0)) throw ValidationError("gcc horizon must be positive");

  const int dim = grid.dimension();
  const auto boxes = clip_boxes(region.resolve(grid), grid);
  const double lx = grid.lx();
  const double ly = dim == 2 ? grid.ly() : 0.0;

  GccReport rep;
  rep.region = region.describe();
  rep.horizon = horizon;

  double worst_hit = 0;
  bool any_miss = false;
  auto note = [&](RaySample s) {
    if (s.hit) worst_hit = std::max(worst_hit, s.first_hit);
    else if (!any_miss) {
      any_miss = true;
      rep.worst_miss = s;
    }
    rep.rays.push_back(std::move(s));
  };

  // Axis-parallel bouncing families (2D): between consecutive box edges the
  // cross-section seen by the family is constant, so one probe per cell plus
  // the exact worst-entry formula covers the whole family. An empty
  // cross-section is a trapped line: geometric control fails.
  if (dim == 2) {
    for (int axis = 0; axis < 2 && !rep.trapped; ++axis) {
      const double span = axis == 0 ? lx : ly;       // transverse coordinate range
      const double other = axis == 0 ? ly : lx;      // bouncing segment length
      std::vector<double> edges{0.0, span};
      for (const Box& b : boxes) {
        edges.push_back(std::clamp(b.lo[axis], 0.0, span));
        edges.push_back(std::clamp(b.hi[axis], 0.0, span));
      }
      std::sort(edges.begin(), edges.end());
      for (std::size_t c = 0; c + 1 < edges.size(); ++c) {
        if (edges[c + 1] - edges[c] <= 2 * geometry::kGeomTol) continue;
        const double off = 0.5 * (edges[c] + edges[c + 1]);
        std::vector<Interval> cross;
        for (const Box& b : boxes)
          if (off >= b.lo[axis] && off <= b.hi[axis])
            cross.push_back(Interval{b.lo[1 - axis], b.hi[1 - axis]});
        const char* fam = axis == 0 ? "vertical" : "horizontal";
        if (cross.empty()) {
          TrappedCertificate tc;
          tc.family = fam;
          tc.offset = off;
          tc.start = axis == 0 ? Vec2{off, other / 2} : Vec2{other / 2, off};
          tc.direction = axis == 0 ? Vec2{0, 1} : Vec2{1, 0};
          rep.trapped = tc;
          break;
        }
        const WorstEntry w = worst_entry_time(merge(cross), other);
        RaySample s;
        s.family = fam;
        s.start = axis == 0 ? Vec2{off, std::clamp(w.start, 1e-9, other - 1e-9)}
                            : Vec2{std::clamp(w.start, 1e-9, other - 1e-9), off};
        s.direction = axis == 0 ? Vec2{0, static_cast<double>(w.dir)}
                                : Vec2{static_cast<double>(w.dir), 0};
        s.first_hit = w.time;
        s.hit = w.time <= horizon;
        note(s);
        ++rep.family_count;
      }
    }
  }

  // Seeded stratified interior rays.
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  if (dim == 1) {
    const int n_pos = std::max(1, n_samples / 2);
    for (int i = 0; i < n_pos; ++i) {
      const double x = (i + 0.05 + 0.9 * unif(rng)) * lx / n_pos;
      for (double dx : {1.0, -1.0}) {
        RayPath path = trace_ray({x, 0}, {dx, 0}, horizon, grid);
        RaySample s;
        s.family = "stratified";
        s.start = {x, 0};
        s.direction = {dx, 0};
        s.first_hit = first_hit_time(path, boxes, dim);
        s.hit = std::isfinite(s.first_hit);
        note(s);
        ++rep.stratified_count;
      }
    }
  } else {
    const int n_angle = 16;
    const int n_pos = std::max(1, static_cast<int>(std::lround(
                                      std::sqrt(static_cast<double>(n_samples) / n_angle))));
    for (int i = 0; i < n_pos; ++i)
      for (int j = 0; j < n_pos; ++j)
        for (int k = 0; k < n_angle; ++k) {
          const double x = (i + 0.05 + 0.9 * unif(rng)) * lx / n_pos;
          const double y = (j + 0.05 + 0.9 * unif(rng)) * ly / n_pos;
          const double th = 2 * std::numbers::pi * (k + unif(rng)) / n_angle;
          Vec2 d{std::cos(th), std::sin(th)};
          RayPath path = trace_ray({x, y}, d, horizon, grid);
          RaySample s;
          s.family = "stratified";
          s.start = {x, y};
          s.direction = d;
          s.first_hit = first_hit_time(path, boxes, dim);
          s.hit = std::isfinite(s.first_hit);
          note(s);
          ++rep.stratified_count;
        }
  }

  if (!any_miss && !rep.trapped) rep.t_uniform = worst_hit;
  return rep;
}

}  // namespace declab::rays
