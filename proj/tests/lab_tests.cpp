#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <string>
#include <vector>

#include "declab/config.hpp"
#include "declab/csv.hpp"
#include "declab/errors.hpp"
#include "declab/fit.hpp"
#include "declab/scenario.hpp"
#include "declab/study.hpp"
#include "declab/suite.hpp"
#include "doctest.h"

using namespace declab;
using namespace declab::lab;

namespace {

// Message-substring helper for errors whose text carries file/line context.
template <typename Fn>
std::string error_message(Fn&& fn) {
  try {
    fn();
  } catch (const std::exception& e) {
    return e.what();
  }
  return {};
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

std::filesystem::path temp_dir() {
  auto dir = std::filesystem::temp_directory_path() / "declab_lab_tests";
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_SUITE("lab") {

TEST_CASE("config parser reads every value shape in file order") {
  const auto t = ConfigTable::parse_string(R"(# leading comment
[scenario]
name = "demo"     # trailing comment
enabled = true
verbose = false

[grid]
dimension = 2
lx = 1.5
nx = 33

[regions.damping]
kind = "boxes"
boxes = [0.0, 0.5, 0.0, 0.25]
sides = ["left", "bottom"]
)");
  CHECK(t.section_names() == std::vector<std::string>{"scenario", "grid", "regions.damping"});
  CHECK(t.key_names("scenario") == std::vector<std::string>{"name", "enabled", "verbose"});
  CHECK(t.has_section("grid"));
  CHECK(!t.has_section("time"));
  CHECK(t.has("grid", "lx"));
  CHECK(!t.has("grid", "ly"));
  CHECK(t.get_string("scenario", "name") == "demo");
  CHECK(t.get_bool("scenario", "enabled"));
  CHECK(!t.get_bool("scenario", "verbose"));
  CHECK(t.get_number("grid", "lx") == 1.5);
  CHECK(t.get_integer("grid", "dimension") == 2);
  CHECK(t.get_number_array("regions.damping", "boxes") ==
        std::vector<double>{0.0, 0.5, 0.0, 0.25});
  CHECK(t.get_string_array("regions.damping", "sides") ==
        std::vector<std::string>{"left", "bottom"});
  // Defaults only kick in for absent keys.
  CHECK(t.get_number_or("grid", "ly", 2.5) == 2.5);
  CHECK(t.get_number_or("grid", "lx", 9.0) == 1.5);
  CHECK(t.get_string_or("scenario", "label", "none") == "none");
  CHECK(t.get_bool_or("scenario", "quiet", true));
  CHECK(t.get_integer_or("grid", "ny", 7) == 7);
}

TEST_CASE("config parser rejects malformed input with file and line context") {
  SUBCASE("duplicate key") {
    const auto msg = error_message([] {
      ConfigTable::parse_string("[a]\nx = 1\nx = 2\n", "bad.toml");
    });
    CHECK(contains(msg, "bad.toml:3"));
    CHECK(contains(msg, "duplicate"));
  }
  SUBCASE("duplicate section") {
    const auto msg = error_message([] {
      ConfigTable::parse_string("[a]\nx = 1\n[a]\ny = 2\n", "bad.toml");
    });
    CHECK(contains(msg, "bad.toml:3"));
  }
  SUBCASE("key before any section") {
    const auto msg = error_message([] { ConfigTable::parse_string("x = 1\n", "bad.toml"); });
    CHECK(contains(msg, "bad.toml:1"));
  }
  SUBCASE("unparseable number") {
    const auto msg = error_message([] {
      ConfigTable::parse_string("[a]\nx = 1.2.3\n", "bad.toml");
    });
    CHECK(contains(msg, "bad.toml:2"));
  }
  SUBCASE("missing key names section.key") {
    const auto t = ConfigTable::parse_string("[a]\nx = 1\n", "cfg.toml");
    const auto msg = error_message([&] { t.get_number("a", "y"); });
    CHECK(contains(msg, "a.y"));
    CHECK(contains(msg, "cfg.toml"));
  }
  SUBCASE("wrong type names the expectation") {
    const auto t = ConfigTable::parse_string("[a]\nx = \"text\"\n", "cfg.toml");
    const auto msg = error_message([&] { t.get_number("a", "x"); });
    CHECK(contains(msg, "a.x"));
    CHECK(contains(msg, "number"));
  }
  SUBCASE("integer getter accepts whole doubles only") {
    const auto t = ConfigTable::parse_string("[a]\nwhole = 3.0\nfrac = 1.5\n");
    CHECK(t.get_integer("a", "whole") == 3);
    CHECK_THROWS_AS(t.get_integer("a", "frac"), ValidationError);
  }
  SUBCASE("typo guard") {
    const auto t = ConfigTable::parse_string("[time]\nhorizn = 4.0\n", "cfg.toml");
    const auto msg = error_message([&] {
      t.restrict_keys("time", {"horizon", "cfl_safety", "stride"});
    });
    CHECK(contains(msg, "time.horizn"));
    CHECK_NOTHROW(t.restrict_keys("absent_section", {"whatever"}));
  }
  SUBCASE("missing file names the path") {
    const auto msg = error_message([] { ConfigTable::parse_file("/nonexistent/x.toml"); });
    CHECK(contains(msg, "/nonexistent/x.toml"));
  }
}

#ifdef DECLAB_SOURCE_DIR
TEST_CASE("shipped reference config matches the built-in scenario") {
  const auto file = ScenarioConfig::from_file(std::string(DECLAB_SOURCE_DIR) +
                                              "/configs/reference.toml");
  const auto code = reference_config();
  CHECK(file.name == code.name);
  CHECK(file.grid.dimension == code.grid.dimension);
  CHECK(file.grid.lx == code.grid.lx);
  CHECK(file.grid.ly == code.grid.ly);
  CHECK(file.grid.nx == code.grid.nx);
  CHECK(file.grid.ny == code.grid.ny);
  REQUIRE(file.regions.size() == code.regions.size());
  for (const auto& [name, spec] : code.regions) {
    REQUIRE(file.regions.count(name) == 1);
    const auto& other = file.regions.at(name);
    CHECK(other.kind() == spec.kind());
    CHECK(other.width() == spec.width());
    CHECK(other.mollification() == spec.mollification());
    CHECK(other.sides() == spec.sides());
  }
  CHECK(file.damping.region == code.damping.region);
  CHECK(file.damping.amplitude == code.damping.amplitude);
  CHECK(file.damping.floor == code.damping.floor);
  CHECK(file.coupling.region == code.coupling.region);
  CHECK(file.coupling.amplitude == code.coupling.amplitude);
  CHECK(file.coupling.floor == code.coupling.floor);
  CHECK(file.nonlinearity.u == code.nonlinearity.u);
  CHECK(file.nonlinearity.v == code.nonlinearity.v);
  CHECK(file.data.kind == code.data.kind);
  CHECK(file.data.component == code.data.component);
  CHECK(file.data.sigma == code.data.sigma);
  CHECK(file.data.center == code.data.center);
  CHECK(file.data.energy == code.data.energy);
  CHECK(file.time.horizon == code.time.horizon);
  CHECK(file.time.cfl_safety == code.time.cfl_safety);
  CHECK(file.time.stride == code.time.stride);
  CHECK(file.output.csv == code.output.csv);
}
#endif

TEST_CASE("initial data builders respect the boundary and the seed") {
  auto g2 = geometry::make_rectangle(1.0, 1.0, 17, 17);
  SUBCASE("eigenmode lives in one component and vanishes on the walls") {
    const auto s = eigenmode_data(g2, 2, 3, "v");
    double v_mass = 0;
    for (std::size_t i = 0; i < g2->node_count(); ++i) {
      CHECK(s.u[i] == 0.0);
      if (g2->is_boundary(i)) CHECK(s.v[i] == 0.0);
      v_mass += std::abs(s.v[i]);
    }
    CHECK(v_mass > 0);
    CHECK_THROWS_AS(eigenmode_data(g2, 0, 1, "u"), ValidationError);
    CHECK_THROWS_AS(eigenmode_data(g2, 1, 99, "u"), ValidationError);
    CHECK_THROWS_AS(eigenmode_data(g2, 1, 1, "w"), ValidationError);
  }
  SUBCASE("gaussian bump is tapered to zero on the walls") {
    const auto s = gaussian_bump_data(g2, 0.25, {0.5, 0.5}, "u");
    for (std::size_t i = 0; i < g2->node_count(); ++i)
      if (g2->is_boundary(i)) CHECK(s.u[i] == 0.0);
    CHECK(s.u[g2->index(8, 8)] > 0.0);
    CHECK_THROWS_AS(gaussian_bump_data(g2, -0.1, {0.5, 0.5}, "u"), ValidationError);
  }
  SUBCASE("band-limited draws are reproducible") {
    const auto s1 = random_band_data(g2, 6, 99);
    const auto s2 = random_band_data(g2, 6, 99);
    const auto s3 = random_band_data(g2, 6, 100);
    CHECK(s1.u == s2.u);
    CHECK(s1.vt == s2.vt);
    double diff = 0;
    for (std::size_t i = 0; i < g2->node_count(); ++i) diff += std::abs(s1.u[i] - s3.u[i]);
    CHECK(diff > 0);
    CHECK_THROWS_AS(random_band_data(g2, 0, 1), ValidationError);
    CHECK_THROWS_AS(random_band_data(g2, 9999, 1), ValidationError);
  }
}

TEST_CASE("energy normalization hits the target for every form family") {
  auto g = geometry::make_interval(1.0, 65);
  SUBCASE("linear and defocusing: total energy including the potential") {
    for (const auto& fpair :
         {semilinear::NonlinearityPair::none(), semilinear::NonlinearityPair::cubic(),
          semilinear::NonlinearityPair::power(4.0)}) {
      auto s = random_band_data(g, 5, 3);
      normalize_energy(s, fpair, 2.5);
      CHECK(wave::energy(s, &fpair).total == doctest::Approx(2.5).epsilon(1e-10));
    }
  }
  SUBCASE("focusing: quadratic part alone, potential untouched") {
    const semilinear::NonlinearityPair fpair{semilinear::Nonlinearity::focusing_cubic(),
                                             semilinear::Nonlinearity::zero()};
    auto s = eigenmode_data(g, 1, 0, "u");
    normalize_energy(s, fpair, 2.5);
    CHECK(0.5 * wave::h_norm_sq(s) == doctest::Approx(2.5).epsilon(1e-10));
  }
  SUBCASE("zero data cannot be normalized") {
    auto s = wave::SystemState::zero(g);
    CHECK_THROWS_AS(normalize_energy(s, semilinear::NonlinearityPair::none(), 1.0),
                    ValidationError);
  }
}

TEST_CASE("scenario step policy lands on the horizon") {
  auto g = geometry::make_interval(1.0, 21);  // cfl limit = h = 0.05
  int n = 0;
  const double dt = scenario_dt(*g, 2.0, 0.5, n);
  CHECK(n == 80);
  CHECK(dt == doctest::Approx(0.025));
  const double dt2 = scenario_dt(*g, 1.01, 0.5, n);
  CHECK(n == 41);
  CHECK(dt2 * n == doctest::Approx(1.01).epsilon(1e-14));
  CHECK(dt2 <= 0.025 + 1e-15);
  CHECK_THROWS_AS(scenario_dt(*g, -1.0, 0.5, n), ValidationError);
  CHECK_THROWS_AS(scenario_dt(*g, 1.0, 1.5, n), ValidationError);
}

TEST_CASE("scenario builder wires regions, tags, and guards end to end") {
  const std::string base = R"(
[grid]
dimension = 1
nx = 65

[regions.damp]
kind = "boxes"
boxes = [0.0, 0.4]
mollification = 0.05

[regions.couple]
kind = "boxes"
boxes = [COUPLE]
mollification = 0.02

[damping]
region = "damp"
amplitude = 1.0
floor = 0.2

[coupling]
region = "couple"
amplitude = 0.5
floor = 0.1

[data]
kind = "eigenmode"
energy = 1.0

[time]
horizon = 0.1
)";
  const auto with_couple = [&](const std::string& box) {
    std::string text = base;
    text.replace(text.find("COUPLE"), 6, box);
    return ScenarioConfig::from_table(ConfigTable::parse_string(text));
  };

  SUBCASE("contained coupling is hypothesis-clean") {
    const auto s = build_scenario(with_couple("0.05, 0.3"));
    CHECK(!s.hypothesis_violating);
    CHECK(s.a.max_value == doctest::Approx(1.0));
    CHECK(s.b.max_value == doctest::Approx(0.5));
    const auto traj = run_scenario(s);
    CHECK(!traj.hypothesis_violating);
    CHECK(traj.initial_energy() == doctest::Approx(1.0).epsilon(1e-9));
  }
  SUBCASE("escaping coupling is tagged but still runs") {
    const auto s = build_scenario(with_couple("0.6, 0.9"));
    CHECK(s.hypothesis_violating);
    const auto traj = run_scenario(s);
    CHECK(traj.hypothesis_violating);
    CHECK(traj.size() > 0);
  }
  SUBCASE("unknown region name") {
    auto cfg = with_couple("0.05, 0.3");
    cfg.damping.region = "nope";
    const auto msg = error_message([&] { build_scenario(cfg); });
    CHECK(contains(msg, "nope"));
  }
  SUBCASE("unknown sections and kinds are rejected") {
    CHECK_THROWS_AS(ScenarioConfig::from_table(
                        ConfigTable::parse_string("[grd]\ndimension = 1\n")),
                    ValidationError);
    auto cfg = with_couple("0.05, 0.3");
    cfg.data.kind = "plane_wave";
    CHECK_THROWS_AS(build_scenario(cfg), ValidationError);
    cfg.data.kind = "eigenmode";
    cfg.nonlinearity.u = "quartic";
    CHECK_THROWS_AS(build_scenario(cfg), ValidationError);
  }
}

TEST_CASE("double formatting survives the text round trip bitwise") {
  const double cases[] = {0.1,
                          1.0 / 3.0,
                          1e-308,
                          0x1p-1074,  // smallest denormal
                          -0.0,
                          std::numbers::pi,
                          12345678.9012345678,
                          -2.5e17};
  for (double x : cases) {
    const double back = std::strtod(format_double(x).c_str(), nullptr);
    CHECK(std::memcmp(&back, &x, sizeof x) == 0);
  }
}

TEST_CASE("energy csv carries the exact schema and round trips bitwise") {
  auto g = geometry::make_interval(1.0, 33);
  const auto a = geometry::build_coefficient(geometry::RegionSpec::box1d(0.0, 0.5, 0.0),
                                             g, 1.0, 0.5);
  const auto z = geometry::zero_coefficient(g);
  const auto traj = wave::run_linear(eigenmode_data(g, 1, 0, "u"), a, z,
                                     0.4 * g->cfl_limit(), 50, nullptr, {});
  const auto path = (temp_dir() / "energy_roundtrip.csv").string();
  write_energy_csv(path, traj);

  const auto table = read_csv(path);
  CHECK(table.header == std::vector<std::string>{"t", "E_total", "E_kin_u", "E_kin_v",
                                                 "E_el_u", "E_el_v", "E_nl",
                                                 "dissipation_cum"});
  REQUIRE(table.rows.size() == traj.size());
  const auto t_col = table.values("t");
  const auto e_col = table.values("E_total");
  const auto nl_col = table.values("E_nl");
  const auto d_col = table.values("dissipation_cum");
  for (std::size_t k = 0; k < traj.size(); ++k) {
    CHECK(t_col[k] == traj.times[k]);
    CHECK(e_col[k] == traj.energies[k].total);
    CHECK(nl_col[k] == 0.0);  // linear run: no potential column content
    CHECK(d_col[k] == traj.dissipation_cum[k]);
  }
  CHECK_THROWS_AS(table.column("nope"), ValidationError);
}

TEST_CASE("csv io failure modes") {
  CHECK_THROWS_AS(read_csv("/nonexistent/missing.csv"), IoError);
  const auto dir = temp_dir();
  CHECK_THROWS_AS(write_table_csv((dir / "bad.csv").string(), {"a", "b"}, {{1.0}}),
                  ValidationError);
  const auto bad = (dir / "corrupt.csv").string();
  {
    std::ofstream out(bad);
    out << "a,b\n1.0,zzz\n";
  }
  const auto msg = error_message([&] { read_csv(bad); });
  CHECK(contains(msg, ":2"));
  CHECK(contains(msg, "zzz"));
}

TEST_CASE("decay fit recovers synthetic rates") {
  SUBCASE("pure exponential is recovered to rounding") {
    std::vector<double> t, e;
    for (int k = 0; k < 200; ++k) {
      t.push_back(10.0 * k / 199.0);
      e.push_back(3.0 * std::exp(-0.7 * t.back()));
    }
    const auto fit = fit_decay(t, e);
    CHECK(fit.beta == doctest::Approx(0.7).epsilon(1e-8));
    CHECK(fit.intercept == doctest::Approx(std::log(3.0)).epsilon(1e-8));
    CHECK(fit.r_squared > 1.0 - 1e-12);
    CHECK(fit.n_points == 120);  // last 60% of 200 samples
    CHECK(fit.t_hi == t.back());
    CHECK(fit.t_lo == doctest::Approx(10.0 * 80 / 199.0));
  }
  SUBCASE("modulated exponential lands within the ripple") {
    std::vector<double> t, e;
    for (int k = 0; k < 400; ++k) {
      t.push_back(10.0 * k / 399.0);
      e.push_back(std::exp(-0.7 * t.back()) * (1.0 + 0.1 * std::sin(10.0 * t.back())));
    }
    const auto fit = fit_decay(t, e);
    CHECK(fit.beta == doctest::Approx(0.7).epsilon(0.03));
    CHECK(fit.r_squared > 0.9);
  }
  SUBCASE("flat history fits exactly with rate zero") {
    std::vector<double> t, e;
    for (int k = 0; k < 50; ++k) {
      t.push_back(0.1 * k);
      e.push_back(5.0);
    }
    const auto fit = fit_decay(t, e);
    CHECK(std::abs(fit.beta) < 1e-12);
    CHECK(fit.r_squared == 1.0);
  }
  SUBCASE("noise floor strips dead samples, starving the window") {
    std::vector<double> t, e;
    for (int k = 0; k < 12; ++k) {
      t.push_back(k);
      e.push_back(k < 8 ? 1.0 : 1e-15);
    }
    CHECK_THROWS_AS(fit_decay(t, e), ValidationError);
  }
  SUBCASE("input validation") {
    CHECK_THROWS_AS(fit_decay({0.0, 1.0}, {1.0}), ValidationError);
    CHECK_THROWS_AS(fit_decay(std::vector<double>(20, 1.0), std::vector<double>(20, 0.0)),
                    ValidationError);
    std::vector<double> same_t(20, 1.0), e(20, 1.0);
    CHECK_THROWS_AS(fit_decay(same_t, e), ValidationError);
  }
  SUBCASE("trajectory overload reads the energy series") {
    wave::TrajectoryRecord traj;
    for (int k = 0; k < 40; ++k) {
      traj.times.push_back(0.25 * k);
      wave::EnergyBreakdown eb;
      eb.total = 2.0 * std::exp(-0.31 * traj.times.back());
      traj.energies.push_back(eb);
    }
    CHECK(fit_decay(traj).beta == doctest::Approx(0.31).epsilon(1e-9));
  }
}

TEST_CASE("observability quotient tracks absorbed energy") {
  auto g = geometry::make_interval(1.0, 65);
  const auto z = geometry::zero_coefficient(g);
  const auto a = geometry::build_coefficient(geometry::RegionSpec::box1d(0.0, 0.5, 0.0),
                                             g, 1.0, 0.5);
  const double dt = 0.4 * g->cfl_limit();
  SUBCASE("undamped run never absorbs") {
    const auto traj = wave::run_linear(eigenmode_data(g, 1, 0, "u"), z, z, dt, 100, nullptr, {});
    const auto est = observability_ratio(traj, 0.5);
    CHECK(!est.finite);
    CHECK(std::isinf(est.ratio));
  }
  SUBCASE("damped run gives a finite nonincreasing quotient") {
    const auto traj = wave::run_linear(eigenmode_data(g, 1, 0, "u"), a, z, dt, 400, nullptr, {});
    const auto early = observability_ratio(traj, 0.5);
    const auto late = observability_ratio(traj, 2.0);
    REQUIRE(early.finite);
    REQUIRE(late.finite);
    CHECK(early.ratio >= late.ratio);
    CHECK(late.ratio >= 1.0);  // cannot absorb more than was there
    CHECK(early.at_time <= 0.5);
    CHECK(late.at_time <= 2.0);
    CHECK(early.energy0 == traj.initial_energy());
  }
  SUBCASE("empty trajectory is rejected") {
    CHECK_THROWS_AS(observability_ratio(wave::TrajectoryRecord{}, 1.0), ValidationError);
  }
}

TEST_CASE("linear decay survey fits every draw") {
  ScenarioConfig cfg;
  cfg.grid.dimension = 1;
  cfg.grid.nx = 65;
  cfg.regions.emplace("damp", geometry::RegionSpec::box1d(0.0, 0.4, 0.05));
  cfg.damping = {"damp", 1.0, 0.2};
  cfg.data.kind = "random_band";
  cfg.data.band = 4;
  cfg.data.energy = 1.0;
  cfg.time.horizon = 8.0;
  cfg.time.cfl_safety = 0.5;
  cfg.time.stride = 10;
  const auto survey = linear_decay_survey(cfg, 3, 17);
  REQUIRE(survey.fits.size() == 3);
  double mb = survey.fits[0].beta, mr = survey.fits[0].r_squared;
  for (const auto& f : survey.fits) {
    mb = std::min(mb, f.beta);
    mr = std::min(mr, f.r_squared);
    CHECK(f.beta > 0.0);
  }
  CHECK(survey.min_beta == mb);
  CHECK(survey.min_r_squared == mr);
  CHECK_THROWS_AS(linear_decay_survey(cfg, 0, 17), ValidationError);
}

TEST_CASE("acceptance registry exposes exactly the twelve checks") {
  const auto ids = criterion_ids();
  REQUIRE(ids.size() == 12);
  for (int k = 0; k < 12; ++k) CHECK(ids[k] == k + 1);
  CHECK_THROWS_AS(run_criterion(99, temp_dir().string(), 1), ValidationError);
  CHECK_THROWS_AS(run_criterion(0, temp_dir().string(), 1), ValidationError);
}

}  // TEST_SUITE
