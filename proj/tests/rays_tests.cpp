#include <cmath>
#include <limits>
#include <random>

#include "declab/coefficient.hpp"
#include "declab/errors.hpp"
#include "declab/gcc.hpp"
#include "declab/ray.hpp"
#include "doctest.h"

using namespace declab;
using namespace declab::rays;
using geometry::Box;
using geometry::RegionSpec;
using geometry::Side;

namespace {

// Independent billiard oracle: on a rectangle the specular flow factors into
// per-axis triangle-wave folds of the free motion.
double fold(double t, double length) {
  double r = std::fmod(t, 2 * length);
  if (r < 0) r += 2 * length;
  return r <= length ? r : 2 * length - r;
}

// Derivative sign of the fold (undefined exactly on the walls).
double fold_sign(double t, double length) {
  double r = std::fmod(t, 2 * length);
  if (r < 0) r += 2 * length;
  return r < length ? 1.0 : -1.0;
}

}  // namespace

TEST_SUITE("rays") {

TEST_CASE("free segment and first reflection") {
  auto g = geometry::make_rectangle(1.0, 1.0, 9, 9);
  const auto path = trace_ray({0.5, 0.5}, {1.0, 0.0}, 1.0, *g);
  REQUIRE(path.events.size() == 1);
  CHECK(path.events[0].time == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(path.events[0].point.x == 1.0);
  CHECK(path.events[0].point.y == doctest::Approx(0.5));
  CHECK(path.events[0].direction.x == -1.0);

  const Vec2 before = path.position(0.2);
  CHECK(before.x == doctest::Approx(0.7).epsilon(1e-14));
  const Vec2 after = path.position(0.8);
  CHECK(after.x == doctest::Approx(0.7).epsilon(1e-14));
  CHECK(path.direction(0.2).x == 1.0);
  CHECK(path.direction(0.8).x == -1.0);
}

TEST_CASE("billiard flow matches the per-axis fold oracle") {
  const double lx = 1.0, ly = 1.5;
  auto g = geometry::make_rectangle(lx, ly, 9, 13);
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> unif(0.05, 0.95);
  for (int trial = 0; trial < 20; ++trial) {
    const Vec2 p0{unif(rng) * lx, unif(rng) * ly};
    const double th = 2 * 3.14159265358979 * unif(rng);
    const Vec2 d{std::cos(th), std::sin(th)};
    const auto path = trace_ray(p0, d, 12.0, *g);
    for (int k = 1; k <= 10; ++k) {
      const double s = 1.17 * k;
      const Vec2 p = path.position(s);
      CHECK(p.x == doctest::Approx(fold(p0.x + s * d.x, lx)).epsilon(1e-11));
      CHECK(p.y == doctest::Approx(fold(p0.y + s * d.y, ly)).epsilon(1e-11));
      const Vec2 dir = path.direction(s);
      CHECK(dir.x == doctest::Approx(d.x * fold_sign(p0.x + s * d.x, lx)).epsilon(1e-11));
      CHECK(dir.y == doctest::Approx(d.y * fold_sign(p0.y + s * d.y, ly)).epsilon(1e-11));
    }
  }
}

TEST_CASE("corner hit reflects both components") {
  auto g = geometry::make_rectangle(1.0, 1.0, 9, 9);
  const double rt2 = std::sqrt(2.0);
  const auto path = trace_ray({0.25, 0.25}, {1 / rt2, 1 / rt2}, 3.0, *g);
  // Corner (1,1) reached after 0.75*sqrt(2); the flow retraces the diagonal.
  const Vec2 p = path.position(rt2);
  CHECK(p.x == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(p.y == doctest::Approx(0.75).epsilon(1e-12));
  const Vec2 dir = path.direction(rt2);
  CHECK(dir.x == doctest::Approx(-1 / rt2));
  CHECK(dir.y == doctest::Approx(-1 / rt2));
}

TEST_CASE("trace preconditions") {
  auto g2 = geometry::make_rectangle(1.0, 1.0, 9, 9);
  auto g1 = geometry::make_interval(1.0, 9);
  CHECK_THROWS_AS(trace_ray({0.5, 0.5}, {1.0, 1.0}, 1.0, *g2), ValidationError);  // not unit
  CHECK_THROWS_AS(trace_ray({0.0, 0.5}, {1.0, 0.0}, 1.0, *g2), ValidationError);  // on wall
  CHECK_THROWS_AS(trace_ray({0.5, 0.5}, {1.0, 0.0}, 0.0, *g2), ValidationError);  // no horizon
  CHECK_THROWS_AS(trace_ray({0.5, 0.0}, {0.6, 0.8}, 1.0, *g1), ValidationError);  // 1D diagonal
  CHECK_NOTHROW(trace_ray({0.5, 0.0}, {-1.0, 0.0}, 1.0, *g1));
}

TEST_CASE("1d flow folds on the interval") {
  auto g = geometry::make_interval(1.0, 21);
  const auto path = trace_ray({0.3, 0}, {1.0, 0}, 2.0, *g);
  CHECK(path.position(0.9).x == doctest::Approx(fold(1.2, 1.0)).epsilon(1e-13));
  CHECK(path.position(1.8).x == doctest::Approx(fold(2.1, 1.0)).epsilon(1e-13));
}

TEST_CASE("interpolation is exact on bilinear nodal data") {
  auto g = geometry::make_rectangle(1.0, 2.0, 11, 15);
  geometry::CoefficientField f;
  f.grid = g;
  f.values.resize(g->node_count());
  for (std::size_t i = 0; i < g->node_count(); ++i) {
    const auto p = g->position(i);
    f.values[i] = 2.0 * p[0] + 3.0 * p[1] + 0.5;
  }
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int k = 0; k < 25; ++k) {
    const Vec2 p{unif(rng), 2.0 * unif(rng)};
    CHECK(interpolate(f, p) == doctest::Approx(2.0 * p.x + 3.0 * p.y + 0.5).epsilon(1e-13));
  }
  // Clamped outside the domain.
  CHECK(interpolate(f, {-1.0, -1.0}) == doctest::Approx(0.5));
}

TEST_CASE("coefficient trace adjusts the resolution to fit the horizon") {
  auto g = geometry::make_rectangle(1.0, 1.0, 9, 9);
  const auto field = geometry::build_coefficient(RegionSpec::whole_domain(), g, 2.5, 0.1);
  const auto path = trace_ray({0.5, 0.5}, {1.0, 0.0}, 1.0, *g);
  const auto trace = coefficient_trace(path, field, 0.3);
  REQUIRE(trace.size() == 5);  // ceil(1/0.3) + 1 samples, ds snapped to 0.25
  CHECK(trace.ds == doctest::Approx(0.25));
  for (double v : trace.values) CHECK(v == 2.5);
  CHECK_THROWS_AS(coefficient_trace(path, field, 0.0), ValidationError);
}

TEST_CASE("first hit time is exact on transversal crossings") {
  auto g = geometry::make_rectangle(1.0, 1.0, 9, 9);
  const std::vector<Box> boxes{Box{{0.6, 0.2}, {0.8, 0.9}}};
  SUBCASE("direct") {
    const auto path = trace_ray({0.3, 0.5}, {1.0, 0.0}, 3.0, *g);
    CHECK(first_hit_time(path, boxes, 2) == doctest::Approx(0.3).epsilon(1e-13));
  }
  SUBCASE("after one fold") {
    const auto path = trace_ray({0.3, 0.5}, {-1.0, 0.0}, 3.0, *g);
    CHECK(first_hit_time(path, boxes, 2) == doctest::Approx(0.9).epsilon(1e-13));
  }
  SUBCASE("parallel line that never meets the box") {
    const auto path = trace_ray({0.3, 0.95}, {1.0, 0.0}, 50.0, *g);
    CHECK(std::isinf(first_hit_time(path, boxes, 2)));
  }
  SUBCASE("start inside hits at zero") {
    const auto path = trace_ray({0.7, 0.5}, {1.0, 0.0}, 1.0, *g);
    CHECK(first_hit_time(path, boxes, 2) == 0.0);
  }
}

TEST_CASE("first hit time agrees with a dense march") {
  auto g = geometry::make_rectangle(1.0, 1.0, 9, 9);
  const std::vector<Box> boxes{Box{{0.1, 0.5}, {0.3, 0.8}}, Box{{0.6, 0.1}, {0.8, 0.4}}};
  const auto inside = [&](const Vec2& p) {
    for (const Box& b : boxes)
      if (p.x >= b.lo[0] && p.x <= b.hi[0] && p.y >= b.lo[1] && p.y <= b.hi[1]) return true;
    return false;
  };
  const Vec2 dirs[] = {{0.6, 0.8}, {-0.28, 0.96}, {0.8, -0.6}};
  const Vec2 starts[] = {{0.45, 0.95}, {0.9, 0.55}, {0.05, 0.05}};
  for (int c = 0; c < 3; ++c) {
    const auto path = trace_ray(starts[c], dirs[c], 4.0, *g);
    const double exact = first_hit_time(path, boxes, 2);
    const double ds = 1e-5;
    double marched = std::numeric_limits<double>::infinity();
    for (double s = 0; s <= 4.0; s += ds)
      if (inside(path.position(s))) {
        marched = s;
        break;
      }
    REQUIRE(std::isfinite(exact));
    CHECK(std::abs(exact - marched) <= 2 * ds);
  }
}

TEST_CASE("two-sided collar is certified with the analytic family supremum") {
  auto g = geometry::make_rectangle(1.0, 1.0, 17, 17);
  const auto region = RegionSpec::side_collar({Side::left, Side::bottom}, 0.25, 0.0);
  const auto rep = gcc_verify(region, *g, 500, 4.0, 11);
  REQUIRE(rep.certified());
  REQUIRE(rep.t_uniform.has_value());
  // Vertical bouncing rays outside the left collar must cross the bottom one;
  // the worst start sits just above it: (1 - 0.25) + (1 - 0.25) = 1.5.
  double vertical_worst = 0;
  for (const auto& r : rep.rays)
    if (r.family == "vertical") vertical_worst = std::max(vertical_worst, r.first_hit);
  CHECK(vertical_worst == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(*rep.t_uniform >= 1.5 - 1e-12);
  CHECK(*rep.t_uniform <= 1.5 * std::sqrt(2.0) + 1e-9);  // folded diagonal bound
  CHECK(rep.family_count > 0);
  CHECK(rep.stratified_count > 0);
}

TEST_CASE("whole domain is controlled instantly") {
  auto g = geometry::make_rectangle(1.0, 1.0, 9, 9);
  const auto rep = gcc_verify(RegionSpec::whole_domain(), *g, 100, 1.0, 1);
  REQUIRE(rep.certified());
  CHECK(*rep.t_uniform == 0.0);
}

TEST_CASE("vertical strip leaves a trapped vertical orbit") {
  auto g = geometry::make_rectangle(1.0, 1.0, 9, 9);
  const auto rep =
      gcc_verify(RegionSpec::box2d({0.4, 0.0}, {0.6, 1.0}), *g, 200, 5.0, 2);
  CHECK(!rep.certified());
  CHECK(!rep.t_uniform.has_value());
  REQUIRE(rep.trapped.has_value());
  CHECK(rep.trapped->family == "vertical");
  const double off = rep.trapped->offset;
  CHECK((off < 0.4 || off > 0.6));
  CHECK(rep.trapped->direction.x == 0.0);
  CHECK(std::abs(rep.trapped->direction.y) == 1.0);
  // The certificate line really avoids the region.
  CHECK(rep.trapped->start.x == doctest::Approx(off));
}

TEST_CASE("half-plane region traps the far vertical family") {
  auto g = geometry::make_rectangle(1.0, 1.0, 9, 9);
  const auto rep = gcc_verify(RegionSpec::box2d({0.0, 0.0}, {0.5, 1.0}), *g, 100, 5.0, 3);
  CHECK(!rep.certified());
  REQUIRE(rep.trapped.has_value());
  CHECK(rep.trapped->offset > 0.5);
}

TEST_CASE("interval control time approaches the far-end bound") {
  auto g = geometry::make_interval(1.0, 21);
  const auto rep = gcc_verify(RegionSpec::box1d(0.0, 0.3), *g, 2000, 3.0, 4);
  REQUIRE(rep.certified());
  // Worst ray starts just right of the region moving right: 1.4 in the limit.
  CHECK(*rep.t_uniform <= 1.4 + 1e-9);
  CHECK(*rep.t_uniform >= 1.3);
}

TEST_CASE("report is deterministic in the seed") {
  auto g = geometry::make_rectangle(1.0, 1.0, 9, 9);
  const auto region = RegionSpec::side_collar({Side::left, Side::bottom}, 0.25, 0.0);
  const auto r1 = gcc_verify(region, *g, 300, 4.0, 77);
  const auto r2 = gcc_verify(region, *g, 300, 4.0, 77);
  REQUIRE(r1.rays.size() == r2.rays.size());
  CHECK(*r1.t_uniform == *r2.t_uniform);
  for (std::size_t i = 0; i < r1.rays.size(); ++i) {
    CHECK(r1.rays[i].start.x == r2.rays[i].start.x);
    CHECK(r1.rays[i].direction.y == r2.rays[i].direction.y);
    CHECK(r1.rays[i].first_hit == r2.rays[i].first_hit);
  }
  CHECK_THROWS_AS(gcc_verify(region, *g, 0, 4.0, 1), ValidationError);
  CHECK_THROWS_AS(gcc_verify(region, *g, 10, -1.0, 1), ValidationError);
}

}  // TEST_SUITE
