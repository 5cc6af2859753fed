#include "declab/suite.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "declab/csv.hpp"
#include "declab/errors.hpp"
#include "declab/gcc.hpp"
#include "declab/picard.hpp"
#include "declab/ray_ode.hpp"
#include "declab/scenario.hpp"
#include "declab/strichartz.hpp"
#include "declab/study.hpp"

namespace declab::lab {

namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string num(double x, const char* fmt = "%.3g") {
  char buf[40];
  std::snprintf(buf, sizeof buf, fmt, x);
  return buf;
}

ScenarioConfig linear_reference() {
  ScenarioConfig cfg = reference_config();
  cfg.nonlinearity = {};
  return cfg;
}

// ---- criterion bodies ------------------------------------------------------

// Energy balance closes to O(dt^2): residual small at dt = cfl_safety * h and
// quartered when dt is halved.
CriterionResult c1_energy_identity(std::uint64_t) {
  CriterionResult r{1, "energy balance closes at O(dt^2)", false, "", 0};
  ScenarioConfig cfg = linear_reference();
  cfg.time.horizon = 10.0;
  const Scenario s = build_scenario(cfg);

  // Step policy under test here is the literal dt = cfl_safety * h (well
  // inside the scheme's 2D stability bound h / sqrt(2)).
  const double dt_lit = cfg.time.cfl_safety * s.grid->hx();
  const int n1 = static_cast<int>(std::ceil(cfg.time.horizon / dt_lit));
  const double dt1 = cfg.time.horizon / n1;

  const auto run = [&](double dt, int n) {
    return wave::run_linear(s.initial, s.a, s.b, dt, n, nullptr, {});
  };
  const double res1 = wave::check_energy_identity(run(dt1, n1));
  const double res2 = wave::check_energy_identity(run(dt1 / 2, 2 * n1));
  const double ratio = res2 > 0 ? res1 / res2 : 0;

  r.passed = res1 < 1e-4 && ratio > 3.5 && ratio < 4.5;
  r.detail = "residual " + num(res1) + " (< 1e-4), halving ratio " + num(ratio) +
             " (in [3.5, 4.5])";
  return r;
}

// Undamped, uncoupled, linear: ten periods of the 1D fundamental keep energy.
CriterionResult c2_conservation(std::uint64_t) {
  CriterionResult r{2, "conservation control", false, "", 0};
  auto grid = geometry::make_interval(1.0, 201);
  const auto a = geometry::zero_coefficient(grid);
  const auto b = geometry::zero_coefficient(grid);
  auto initial = eigenmode_data(grid, 1, 1, "u");

  int n_steps = 0;
  const double dt = scenario_dt(*grid, 20.0, 0.5, n_steps);  // 10 periods
  const auto traj = wave::run_linear(initial, a, b, dt, n_steps, nullptr, {});
  const double drift =
      std::abs(traj.final_energy() - traj.initial_energy()) / traj.initial_energy();
  r.passed = drift < 1e-6;
  r.detail = "relative drift after 10 periods " + num(drift) + " (< 1e-6)";
  return r;
}

// Decoupled undamped component keeps its energy; restoring the coupling hands
// it to the damped component and the total decays exponentially on the tail.
CriterionResult c3_indirect_damping(std::uint64_t) {
  CriterionResult r{3, "indirect damping necessity", false, "", 0};
  const auto t0 = Clock::now();

  ScenarioConfig cfg = linear_reference();
  cfg.data.kind = "eigenmode";
  cfg.data.component = "v";
  cfg.data.mode_x = cfg.data.mode_y = 1;
  cfg.data.energy = 1.0;

  ScenarioConfig uncoupled = cfg;
  uncoupled.coupling = {};
  uncoupled.time.horizon = 20.0;
  uncoupled.time.stride = 50;
  // The drift bound probes structure (no dissipation path), not step error:
  // run the conservative control well below the reference step so the
  // velocity-Verlet shadow-energy oscillation sits under the tolerance.
  uncoupled.time.cfl_safety = 0.05;
  const auto traj_free = run_scenario(build_scenario(uncoupled));
  const double drift =
      std::abs(traj_free.final_energy() - traj_free.initial_energy()) /
      traj_free.initial_energy();
  const double leaked = traj_free.dissipation_cum.back();

  ScenarioConfig coupled = cfg;
  coupled.time.horizon = 40.0;
  coupled.time.stride = 50;
  const auto traj_coupled = run_scenario(build_scenario(coupled));
  const auto fit = fit_decay(traj_coupled);

  const double wall = seconds_since(t0);
  r.passed = drift < 1e-6 && leaked == 0.0 && fit.beta > 0 && fit.r_squared > 0.99 &&
             wall < 300;
  r.detail = "uncoupled drift " + num(drift) + " (< 1e-6), absorbed " + num(leaked) +
             "; coupled beta " + num(fit.beta) + " (> 0), R^2 " + num(fit.r_squared, "%.4f") +
             " (> 0.99); " + num(wall, "%.1f") + " s (< 300)";
  return r;
}

// Worst decay rate over random data is positive and grid-stable.
CriterionResult c4_decay_stability(std::uint64_t seed) {
  CriterionResult r{4, "decay rate grid stability", false, "", 0};
  ScenarioConfig cfg = linear_reference();
  cfg.time.horizon = 12.0;
  cfg.time.stride = 20;
  cfg.data.energy = 1.0;

  const auto coarse = linear_decay_survey(cfg, 5, seed + 100);
  ScenarioConfig fine = cfg;
  fine.grid.nx = fine.grid.ny = 257;
  const auto refined = linear_decay_survey(fine, 5, seed + 100);

  const double b1 = coarse.min_beta, b2 = refined.min_beta;
  const double rel = std::abs(b1 - b2) / std::max(b1, b2);
  r.passed = b1 > 0 && b2 > 0 && rel <= 0.10;
  r.detail = "min beta " + num(b1) + " at h, " + num(b2) + " at h/2 (> 0), relative gap " +
             num(rel) + " (<= 0.10)";
  return r;
}

// Observed-energy quotient stays finite and is nonincreasing in the horizon.
CriterionResult c5_observability(std::uint64_t seed) {
  CriterionResult r{5, "observability quotient", false, "", 0};
  ScenarioConfig cfg = linear_reference();
  cfg.time.horizon = 8.0;
  cfg.time.stride = 10;
  cfg.data.kind = "random_band";

  bool all_finite = true, monotone = true;
  double worst_ratio = 0;
  for (int i = 0; i < 10; ++i) {
    cfg.data.seed = seed + 200 + static_cast<std::uint64_t>(i);
    const auto traj = run_scenario(build_scenario(cfg));
    const auto e2 = observability_ratio(traj, 2.0);
    const auto e4 = observability_ratio(traj, 4.0);
    const auto e8 = observability_ratio(traj, 8.0);
    all_finite = all_finite && e8.finite;
    monotone = monotone && e2.ratio >= e4.ratio && e4.ratio >= e8.ratio;
    if (e8.finite) worst_ratio = std::max(worst_ratio, e8.ratio);
  }
  r.passed = all_finite && monotone;
  r.detail = std::string("10 random data: quotient at T=8 ") +
             (all_finite ? "finite" : "INFINITE") + " (worst " + num(worst_ratio) +
             "), nonincreasing over T in {2,4,8}: " + (monotone ? "yes" : "no");
  return r;
}

// Two-adjacent-sides collar is certified quickly; a mid-domain vertical strip
// is rejected with an exact trapped orbit.
CriterionResult c6_control_region(std::uint64_t seed) {
  CriterionResult r{6, "control region verifier", false, "", 0};
  const auto t0 = Clock::now();
  auto grid = geometry::make_rectangle(1.0, 1.0, 33, 33);

  const auto collar =
      RegionSpec::side_collar({geometry::Side::left, geometry::Side::bottom}, 0.25);
  const auto pos = rays::gcc_verify(collar, *grid, 10000, 2.5, seed);

  const auto strip = RegionSpec::box2d({0.4, 0.0}, {0.6, 1.0});
  const auto neg = rays::gcc_verify(strip, *grid, 10000, 2.5, seed);

  const double wall = seconds_since(t0);
  const bool pos_ok = pos.certified() && *pos.t_uniform <= 2.5;
  const bool neg_ok = neg.trapped.has_value() && neg.trapped->family == "vertical";
  r.passed = pos_ok && neg_ok && wall < 10;
  r.detail = std::string("collar certified: ") + (pos_ok ? "yes" : "NO") +
             (pos.t_uniform ? " (T_unif " + num(*pos.t_uniform) + " <= 2.5)" : "") +
             "; strip trapped orbit: " + (neg_ok ? "yes" : "NO") +
             (neg.trapped ? " (offset " + num(neg.trapped->offset) + ")" : "") + "; " +
             num(wall, "%.2f") + " s (< 10)";
  return r;
}

// Constant-trace transport has a closed form; the resonant two-window profile
// is the constructed unobservable case.
CriterionResult c7_transport_closed_form(std::uint64_t) {
  CriterionResult r{7, "transport closed form", false, "", 0};
  const double two_pi = 2 * std::numbers::pi;

  const auto sys = odeobs::make_system(SampledFunction::constant(1.0, two_pi, 4097),
                                       SampledFunction::constant(2.0, two_pi, 4097));
  const auto g = odeobs::observation_gramian(sys);
  const double q = std::numbers::pi / 4;
  const double gram_err = std::max({std::abs(g.g11 - q), std::abs(g.g22 - q),
                                    std::abs(g.g12)});

  // Two unit observation windows separated by a rotation of exactly 2*pi.
  const std::size_t n = 1025;
  const double ds = 4.0 / (n - 1), pad = 4 * ds;
  const auto a = SampledFunction::piecewise_constant({0.0, 1.0, 3.0, 4.0}, {1.0, 0.0, 1.0},
                                                     4.0, n);
  const auto b = SampledFunction::piecewise_constant(
      {1.0 + pad, 3.0 - pad}, {two_pi / (2.0 - 2 * pad)}, 4.0, n);
  const auto res = odeobs::make_system(a, b);
  const double lam = odeobs::observation_gramian(res).lambda_min();
  const auto crit = odeobs::rotation_criterion(res);

  r.passed = gram_err < 1e-6 && lam < 1e-8 && !crit.holds;
  r.detail = "constant-trace Gramian error " + num(gram_err) +
             " (< 1e-6); resonant lambda_min " + num(lam) + " (< 1e-8), verdict " +
             (crit.holds ? "OBSERVABLE (wrong)" : "unobservable");
  return r;
}

// Gramian positivity and the rotation test tell the same story away from the
// borderline band.
CriterionResult c8_criterion_equivalence(std::uint64_t seed) {
  CriterionResult r{8, "verdict equivalence", false, "", 0};
  const auto t0 = Clock::now();
  const auto rep = odeobs::criterion_equivalence_suite(200, seed + 300);

  int disagree_clear = 0;
  for (const auto& c : rep.cases)
    if (!c.borderline && c.criterion != c.gramian) ++disagree_clear;

  const double wall = seconds_since(t0);
  r.passed = disagree_clear == 0 && wall < 5;
  r.detail = std::to_string(rep.cases.size()) + " traces (200 random): " +
             std::to_string(disagree_clear) + " clear disagreements (want 0), " +
             std::to_string(rep.borderline) + " borderline flagged; " + num(wall, "%.2f") +
             " s (< 5)";
  return r;
}

// Fixed-point residuals contract geometrically and the limit matches the
// direct march. The dt^2 constant was measured on the 1D cubic window below
// across three step halvings (sup_diff/dt^2 = 3.39, flat in dt); pinned with
// a factor-2 margin.
constexpr double kPicardDefectConstant = 7.0;

CriterionResult c9_fixed_point(std::uint64_t) {
  CriterionResult r{9, "fixed point contraction", false, "", 0};
  auto grid = geometry::make_interval(1.0, 129);
  const auto a =
      geometry::build_coefficient(RegionSpec::box1d(0.0, 0.3, 0.05), grid, 1.0, 0.2);
  const auto b =
      geometry::build_coefficient(RegionSpec::box1d(0.05, 0.25, 0.025), grid, 0.8, 0.1);
  const auto fpair = semilinear::NonlinearityPair::cubic();

  auto initial = eigenmode_data(grid, 1, 1, "u");
  normalize_energy(initial, fpair, 4.0);

  const double dt = 0.5 * grid->hx();
  const double horizon = 1.5;
  const double tol = 1e-12;
  const auto res = semilinear::picard_solve(initial, a, b, fpair, horizon, dt, tol, 30);

  bool contracting = res.residuals.size() >= 7;
  double worst_ratio = 0;
  for (std::size_t k = 2; contracting && k <= 6; ++k) {
    const double ratio = res.residuals[k] / res.residuals[k - 1];
    worst_ratio = std::max(worst_ratio, ratio);
    contracting = ratio < 0.8;
  }

  // Direct march with the same step; the two time discretizations agree to
  // O(dt^2), so the limits must too.
  double sup_diff = 0;
  wave::SystemState cur = initial;
  for (std::size_t k = 1; k < res.states.size(); ++k) {
    cur = semilinear::step_semilinear(cur, a, b, fpair, dt);
    sup_diff = std::max(sup_diff, wave::h_norm_diff(cur, res.states[k]));
  }
  const double bound = 10 * tol + kPicardDefectConstant * dt * dt;

  r.passed = contracting && sup_diff <= bound;
  r.detail = std::to_string(res.iterations) + " iterations, worst ratio r_{k+1}/r_k " +
             num(worst_ratio) + " (< 0.8, k = 2..6); fixed point vs direct march " +
             num(sup_diff) + " (<= " + num(bound) + ")";
  return r;
}

// The trust-region guard keeps quiet on every defocusing run and trips on the
// focusing control.
CriterionResult c10_explosion_guard(std::uint64_t seed) {
  CriterionResult r{10, "explosion guard", false, "", 0};
  const double ceiling = 1e4;
  bool quiet = true;
  std::string fired_on;

  const auto check_quiet = [&](const wave::TrajectoryRecord& traj, const std::string& name) {
    const auto verdict = semilinear::explosion_guard(traj, ceiling);
    if (verdict.fired || traj.blew_up || !traj.stop_reason.empty()) {
      quiet = false;
      fired_on = name;
    }
  };

  {
    ScenarioConfig cfg = reference_config();  // cubic + cubic
    cfg.time.horizon = 4.0;
    cfg.time.stride = 20;
    check_quiet(run_scenario(build_scenario(cfg)), "reference cubic");
  }
  {
    auto grid = geometry::make_interval(1.0, 201);
    const auto a =
        geometry::build_coefficient(RegionSpec::box1d(0.0, 0.3, 0.05), grid, 1.0, 0.2);
    const auto b =
        geometry::build_coefficient(RegionSpec::box1d(0.05, 0.25, 0.025), grid, 0.8, 0.1);
    auto data = random_band_data(grid, 6, seed + 400);
    const auto cubic = semilinear::NonlinearityPair::cubic();
    normalize_energy(data, cubic, 1.0);
    int n = 0;
    const double dt = scenario_dt(*grid, 10.0, 0.5, n);
    wave::RunOptions opts;
    opts.stride = 20;
    check_quiet(wave::run_semilinear(data, a, b, cubic, dt, n, opts), "1d cubic");

    const auto power = semilinear::NonlinearityPair::power(3.5);
    auto mode = eigenmode_data(grid, 1, 1, "u");
    normalize_energy(mode, power, 1.0);
    check_quiet(wave::run_semilinear(mode, a, b, power, dt, n, opts), "1d power 3.5");
  }
  {
    ScenarioConfig cfg = reference_config();
    cfg.grid.nx = cfg.grid.ny = 65;
    cfg.nonlinearity.u = cfg.nonlinearity.v = "power";
    cfg.nonlinearity.p_u = cfg.nonlinearity.p_v = 4.5;
    cfg.data.component = "v";
    cfg.data.sigma = 0.2;
    cfg.time.horizon = 5.0;
    cfg.time.stride = 20;
    check_quiet(run_scenario(build_scenario(cfg)), "2d power 4.5");
  }

  // Focusing control: the same guard must trip before T = 5.
  auto grid = geometry::make_interval(1.0, 201);
  const auto az = geometry::zero_coefficient(grid);
  const semilinear::NonlinearityPair focusing{semilinear::Nonlinearity::focusing_cubic(),
                                              semilinear::Nonlinearity::zero()};
  auto data = eigenmode_data(grid, 1, 1, "u");
  normalize_energy(data, focusing, 50.0);
  int n = 0;
  const double dt = scenario_dt(*grid, 5.0, 0.5, n);
  wave::RunOptions opts;
  opts.stride = 5;
  opts.guard_ceiling = 1e3;
  const auto hot = wave::run_semilinear(data, az, az, focusing, dt, n, opts);
  const auto verdict = semilinear::explosion_guard(hot, 1e3);
  const bool fired = verdict.fired || hot.blew_up;
  const double fire_time = verdict.fired ? verdict.time : hot.blow_up_time;

  r.passed = quiet && fired && fire_time < 5.0;
  r.detail = std::string("defocusing batch quiet: ") +
             (quiet ? "yes (4 runs)" : "NO (" + fired_on + ")") +
             "; focusing control fired: " +
             (fired ? "yes at t = " + num(fire_time) + " (< 5)" : "NO");
  return r;
}

// Exponent pair algebra: the admissibility identity holds across the range
// and the p = 4 pair is exact.
CriterionResult c11_pair_algebra(std::uint64_t) {
  CriterionResult r{11, "exponent pair algebra", false, "", 0};
  double worst = 0;
  for (int i = 0; i < 100; ++i) {
    const double p = 3.0 + 2.0 * (i + 0.5) / 100.0;
    const auto pair = semilinear::admissible_pair(p);
    worst = std::max(worst, std::abs(1 / pair.q + 3 / pair.r - 0.5));
  }
  const auto p4 = semilinear::admissible_pair(4.0);
  const bool exact = p4.q == 8.0 && p4.r == 8.0;
  r.passed = worst <= 1e-12 && exact;
  r.detail = "identity defect over 100 exponents " + num(worst) +
             " (<= 1e-12); p = 4 gives (8, 8) " + (exact ? "exactly" : "INEXACTLY");
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw IoError("cannot reopen artifact '" + p.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Same seed, same bytes.
CriterionResult c12_reproducibility(const std::string& scratch_dir, std::uint64_t seed) {
  CriterionResult r{12, "artifact reproducibility", false, "", 0};
  const fs::path base = scratch_dir;
  const auto first = emit_artifacts((base / "emit_a").string(), seed);
  const auto second = emit_artifacts((base / "emit_b").string(), seed);

  bool identical = first == second;
  std::string differing;
  if (identical)
    for (const auto& name : first)
      if (slurp(base / "emit_a" / name) != slurp(base / "emit_b" / name)) {
        identical = false;
        differing = name;
        break;
      }
  r.passed = identical;
  r.detail = std::to_string(first.size()) + " artifacts emitted twice with one seed: " +
             (identical ? "bit-identical" : "DIFFER (" + differing + ")");
  return r;
}

}  // namespace

std::vector<int> criterion_ids() { return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12}; }

CriterionResult run_criterion(int id, const std::string& scratch_dir, std::uint64_t seed) {
  const auto t0 = Clock::now();
  CriterionResult r;
  switch (id) {
    case 1: r = c1_energy_identity(seed); break;
    case 2: r = c2_conservation(seed); break;
    case 3: r = c3_indirect_damping(seed); break;
    case 4: r = c4_decay_stability(seed); break;
    case 5: r = c5_observability(seed); break;
    case 6: r = c6_control_region(seed); break;
    case 7: r = c7_transport_closed_form(seed); break;
    case 8: r = c8_criterion_equivalence(seed); break;
    case 9: r = c9_fixed_point(seed); break;
    case 10: r = c10_explosion_guard(seed); break;
    case 11: r = c11_pair_algebra(seed); break;
    case 12: r = c12_reproducibility(scratch_dir, seed); break;
    default: throw ValidationError("no criterion " + std::to_string(id));
  }
  r.wall_seconds = seconds_since(t0);
  return r;
}

std::vector<CriterionResult> run_all_criteria(const std::string& scratch_dir,
                                              std::uint64_t seed) {
  std::vector<CriterionResult> out;
  for (int id : criterion_ids()) out.push_back(run_criterion(id, scratch_dir, seed));
  return out;
}

std::vector<std::string> emit_artifacts(const std::string& out_dir, std::uint64_t seed) {
  fs::create_directories(out_dir);
  const fs::path base = out_dir;
  std::vector<std::string> written;

  {  // 1D damped coupled linear run
    auto grid = geometry::make_interval(1.0, 201);
    const auto a =
        geometry::build_coefficient(RegionSpec::box1d(0.0, 0.3, 0.05), grid, 1.0, 0.2);
    const auto b =
        geometry::build_coefficient(RegionSpec::box1d(0.05, 0.25, 0.025), grid, 0.8, 0.1);
    auto data = random_band_data(grid, 6, seed);
    normalize_energy(data, semilinear::NonlinearityPair::none(), 1.0);
    int n = 0;
    const double dt = scenario_dt(*grid, 10.0, 0.5, n);
    wave::RunOptions opts;
    opts.stride = 5;
    write_energy_csv((base / "energy_1d.csv").string(),
                     wave::run_linear(data, a, b, dt, n, nullptr, opts));
    written.push_back("energy_1d.csv");
  }
  {  // reference scenario, short semilinear stretch
    ScenarioConfig cfg = reference_config();
    cfg.time.horizon = 2.0;
    cfg.time.stride = 10;
    write_energy_csv((base / "energy_2d.csv").string(), run_scenario(build_scenario(cfg)));
    written.push_back("energy_2d.csv");
  }
  {  // ray census of the certified collar
    auto grid = geometry::make_rectangle(1.0, 1.0, 33, 33);
    const auto collar =
        RegionSpec::side_collar({geometry::Side::left, geometry::Side::bottom}, 0.25);
    write_gcc_csv((base / "gcc_rays.csv").string(),
                  rays::gcc_verify(collar, *grid, 10000, 2.5, seed));
    written.push_back("gcc_rays.csv");
  }
  {  // observability quotients on the linearized reference
    ScenarioConfig cfg = linear_reference();
    cfg.time.horizon = 4.0;
    cfg.time.stride = 10;
    cfg.data.kind = "random_band";
    std::vector<std::vector<double>> rows;
    for (int i = 0; i < 3; ++i) {
      cfg.data.seed = seed + 1 + static_cast<std::uint64_t>(i);
      const auto traj = run_scenario(build_scenario(cfg));
      const auto e2 = observability_ratio(traj, 2.0);
      const auto e4 = observability_ratio(traj, 4.0);
      rows.push_back({static_cast<double>(cfg.data.seed), traj.initial_energy(), e2.ratio,
                      e4.ratio});
    }
    write_table_csv((base / "observability.csv").string(),
                    {"seed", "E0", "ratio_T2", "ratio_T4"}, rows);
    written.push_back("observability.csv");
  }
  {  // verdict equivalence table
    const auto rep = odeobs::criterion_equivalence_suite(50, seed);
    std::vector<std::vector<double>> rows;
    for (const auto& c : rep.cases)
      rows.push_back({c.criterion ? 1.0 : 0.0, c.gramian ? 1.0 : 0.0,
                      c.borderline ? 1.0 : 0.0, c.best_distance, c.lambda_ratio});
    write_table_csv((base / "equivalence.csv").string(),
                    {"criterion", "gramian", "borderline", "best_distance", "lambda_ratio"},
                    rows);
    written.push_back("equivalence.csv");
  }
  return written;
}

}  // namespace declab::lab
