#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>

#include "declab/ray.hpp"
#include "declab/region.hpp"

namespace declab::rays {

using geometry::Box;
using geometry::RegionSpec;

struct RaySample {
  Vec2 start;
  Vec2 direction;
  double first_hit = std::numeric_limits<double>::infinity();
  bool hit = false;
  std::string family;  // "stratified", "vertical", "horizontal"
};

/// Axis-parallel bouncing orbit whose line never meets the region: an exact
/// witness that geometric control fails (found by interval arithmetic on the
/// region's box projections, not by sampling).
struct TrappedCertificate {
  std::string family;  // "vertical" | "horizontal"
  Vec2 start;
  Vec2 direction;
  double offset;  // the trapped line's transverse coordinate
};

struct GccReport {
  std::string region;
  double horizon = 0;
  int stratified_count = 0;
  int family_count = 0;
  std::vector<RaySample> rays;
  std::optional<double> t_uniform;          // max first-hit when every ray hits
  std::optional<RaySample> worst_miss;      // a sampled ray that never hits
  std::optional<TrappedCertificate> trapped;

  bool certified() const { return t_uniform.has_value() && !trapped && !worst_miss; }
};

/// First arc length at which the path enters the box union; +inf if never.
/// Exact per-segment slab intersection, no sampling.
double first_hit_time(const RayPath& path, const std::vector<Box>& region_boxes, int dim);

/// Sampled geometric-control check on the rectangle: seeded stratified
/// (position x angle) rays, the two axis-parallel bouncing families probed
/// along their transverse offsets (including the analytic breakpoints of the
/// first-hit function), and an exact projection-coverage test that either
/// rules out trapped axis-parallel lines or returns one as a certificate.
/// A positive verdict means: certified at this sampling resolution.
GccReport gcc_verify(const RegionSpec& region, const GridDomain& grid, int n_samples,
                     double horizon, std::uint64_t seed);

}  // namespace declab::rays
