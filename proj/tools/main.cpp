// declab command line: scenario runs, decay fits, control-region checks, the
// billiard-ray transport diagnostic, fixed-point solves, and the acceptance
// suite. Exit codes: 0 success, 1 bad input, 2 runtime failure.

#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "declab/csv.hpp"
#include "declab/errors.hpp"
#include "declab/fit.hpp"
#include "declab/gcc.hpp"
#include "declab/picard.hpp"
#include "declab/ray_ode.hpp"
#include "declab/scenario.hpp"
#include "declab/study.hpp"
#include "declab/suite.hpp"

namespace fs = std::filesystem;
using namespace declab;

namespace {

struct Common {
  std::string out_dir = ".";
  std::string format = "csv";
  std::uint64_t seed = 0;
  bool seed_set = false;
};

void add_common(CLI::App* sub, Common& c, bool with_seed) {
  sub->add_option("--out-dir", c.out_dir, "Directory for output files")
      ->envname("DECLAB_OUT_DIR")
      ->capture_default_str();
  sub->add_option("--format", c.format, "Output format (only csv)")->capture_default_str();
  if (with_seed)
    sub->add_option("--seed", c.seed, "Seed override for randomized ingredients")
        ->each([&c](const std::string&) { c.seed_set = true; });
}

void check_format(const Common& c) {
  if (c.format != "csv")
    throw ValidationError("unsupported format '" + c.format + "' (only csv)");
}

fs::path ensure_out_dir(const Common& c) {
  fs::path dir = c.out_dir;
  fs::create_directories(dir);
  return dir;
}

int cmd_simulate(const std::string& config_path, const Common& c) {
  check_format(c);
  auto cfg = lab::ScenarioConfig::from_file(config_path);
  if (c.seed_set) cfg.data.seed = c.seed;
  const auto scen = lab::build_scenario(cfg);
  const auto traj = lab::run_scenario(scen);

  std::printf("scenario '%s': %dD grid %d", scen.name.c_str(), scen.grid->dimension(),
              scen.grid->nx());
  if (scen.grid->dimension() == 2) std::printf("x%d", scen.grid->ny());
  std::printf(", dt %.6g, %d steps to T = %g\n", scen.dt, scen.n_steps, scen.horizon);
  if (traj.hypothesis_violating)
    std::printf("note: hypothesis-violating run (coupling support escapes the damped set)\n");
  std::printf("E(0) = %.6g, E(T) = %.6g, absorbed = %.6g\n", traj.initial_energy(),
              traj.final_energy(), traj.dissipation_cum.back());
  if (traj.blew_up)
    std::printf("blow-up detected at t = %.6g\n", traj.blow_up_time);
  else if (!traj.stop_reason.empty())
    std::printf("stopped early: %s\n", traj.stop_reason.c_str());

  const std::string name = scen.csv_name.empty() ? scen.name + "_energy.csv" : scen.csv_name;
  const fs::path out = ensure_out_dir(c) / name;
  lab::write_energy_csv(out.string(), traj);
  std::printf("wrote %s (%zu rows)\n", out.string().c_str(), traj.size());
  return 0;
}

int cmd_fit(const std::string& csv_path) {
  const auto table = lab::read_csv(csv_path);
  std::vector<double> t, e;
  if (!table.header.empty() && table.header.front() == "t") {
    t = table.values("t");
    e = table.values(table.header.size() > 1 && table.header[1] == "E_total" ? "E_total"
                                                                             : table.header[1]);
  } else if (table.header.size() >= 2) {
    t = table.values(table.header[0]);
    e = table.values(table.header[1]);
  } else {
    throw ValidationError("fit needs a CSV with at least two columns");
  }
  const auto fit = lab::fit_decay(t, e);
  std::printf("beta = %.6g\n", fit.beta);
  std::printf("R^2 = %.6g, window t in [%.6g, %.6g], %d points\n", fit.r_squared, fit.t_lo,
              fit.t_hi, fit.n_points);
  return 0;
}

int cmd_gcc(const std::string& config_path, int n_rays, double horizon, const Common& c) {
  check_format(c);
  const auto cfg = lab::ScenarioConfig::from_file(config_path);
  if (cfg.damping.region.empty())
    throw ValidationError("config has no damping region to check");
  const auto it = cfg.regions.find(cfg.damping.region);
  if (it == cfg.regions.end())
    throw ValidationError("unknown region '" + cfg.damping.region + "'");
  const auto grid = cfg.grid.dimension == 1
                        ? geometry::make_interval(cfg.grid.lx, cfg.grid.nx)
                        : geometry::make_rectangle(cfg.grid.lx, cfg.grid.ly, cfg.grid.nx,
                                                   cfg.grid.ny);

  const auto report = rays::gcc_verify(it->second, *grid, n_rays,
                                       horizon, c.seed_set ? c.seed : 1);
  std::printf("region %s, horizon %g, %d stratified + %d family rays\n",
              report.region.c_str(), report.horizon, report.stratified_count,
              report.family_count);
  if (report.trapped) {
    std::printf("NOT certified: trapped %s orbit at offset %.6g\n",
                report.trapped->family.c_str(), report.trapped->offset);
  } else if (report.worst_miss) {
    std::printf("NOT certified: sampled ray from (%.4g, %.4g) dir (%.4g, %.4g) "
                "misses within the horizon\n",
                report.worst_miss->start.x, report.worst_miss->start.y,
                report.worst_miss->direction.x, report.worst_miss->direction.y);
  } else {
    std::printf("certified at this resolution: every ray meets the region, "
                "T_uniform = %.6g\n", *report.t_uniform);
  }
  const fs::path out = ensure_out_dir(c) / "gcc_rays.csv";
  lab::write_gcc_csv(out.string(), report);
  std::printf("wrote %s (%zu rays)\n", out.string().c_str(), report.rays.size());
  return 0;
}

// Sampled a/b profiles for the transport diagnostic: either a trace CSV with
// columns s,a,b on a uniform grid, or a config with [transport] + [damping] +
// [coupling] sections (constant = v, or breaks = [...] / levels = [...]).
odeobs::RayOdeSystem load_transport(const std::string& path) {
  if (path.size() > 4 && path.substr(path.size() - 4) == ".csv") {
    const auto table = lab::read_csv(path);
    const auto s = table.values("s");
    const auto a = table.values("a");
    const auto b = table.values("b");
    if (s.size() < 2) throw ValidationError("trace needs at least two samples");
    const double ds = s[1] - s[0];
    for (std::size_t i = 1; i < s.size(); ++i)
      if (std::abs(s[i] - s[i - 1] - ds) > 1e-9 * ds)
        throw ValidationError("trace arc-length column is not uniformly spaced");
    return odeobs::make_system({ds, a}, {ds, b});
  }

  const auto t = lab::ConfigTable::parse_file(path);
  const double horizon = t.get_number("transport", "horizon");
  const auto samples = static_cast<std::size_t>(t.get_integer("transport", "samples"));
  const auto profile = [&](const std::string& sec) {
    if (t.has(sec, "constant"))
      return SampledFunction::constant(t.get_number(sec, "constant"), horizon, samples);
    return SampledFunction::piecewise_constant(t.get_number_array(sec, "breaks"),
                                               t.get_number_array(sec, "levels"), horizon,
                                               samples);
  };
  return odeobs::make_system(profile("damping"), profile("coupling"));
}

int cmd_ode_observability(const std::string& path) {
  const auto sys = load_transport(path);
  std::printf("transport over [0, %g], %zu samples (ds = %.6g)\n", sys.horizon(),
              sys.a.size(), sys.ds());

  const auto g = odeobs::observation_gramian(sys);
  std::printf("gramian  g11 %.9g  g12 %.9g  g22 %.9g\n", g.g11, g.g12, g.g22);
  std::printf("lambda_min %.6g, trace %.6g -> %s\n", g.lambda_min(), g.trace(),
              odeobs::gramian_observable(g) ? "observable" : "unobservable");

  const auto crit = odeobs::rotation_criterion(sys);
  std::printf("rotation test: %s (best distance to full turns %.6g, threshold %.6g)%s\n",
              crit.holds ? "observable" : "unobservable", crit.best_distance,
              crit.threshold, crit.borderline ? " [borderline]" : "");
  if (crit.holds)
    std::printf("witness window: s in [%.6g, %.6g]\n", crit.t1, crit.t2);

  const auto defect = odeobs::damped_energy_defect(sys, {1.0, 0.0});
  std::printf("damped energy balance defect %.3g\n", defect);
  return 0;
}

int cmd_picard(const std::string& config_path, double tol, int max_iter) {
  const auto cfg = lab::ScenarioConfig::from_file(config_path);
  const auto scen = lab::build_scenario(cfg);
  const auto res = semilinear::picard_solve(scen.initial, scen.a, scen.b, scen.fpair,
                                            scen.horizon, scen.dt, tol, max_iter);
  std::printf("converged in %d iterations (tol %.3g, window T = %g, dt %.6g)\n",
              res.iterations, tol, scen.horizon, scen.dt);
  for (std::size_t k = 0; k < res.residuals.size(); ++k) {
    std::printf("  r_%zu = %.6g", k + 1, res.residuals[k]);
    if (k > 0 && res.residuals[k - 1] > 0)
      std::printf("   ratio %.4f", res.residuals[k] / res.residuals[k - 1]);
    std::printf("\n");
  }
  std::printf("final energy %.6g\n", res.trajectory.final_energy());
  return 0;
}

int cmd_suite(const Common& c, std::vector<int> only) {
  check_format(c);
  const auto out = ensure_out_dir(c);
  const auto scratch = (out / "scratch").string();
  const std::uint64_t seed = c.seed_set ? c.seed : lab::kDefaultSuiteSeed;

  if (only.empty()) only = lab::criterion_ids();
  int failed = 0;
  for (int id : only) {
    const auto r = lab::run_criterion(id, scratch, seed);
    if (!r.passed) ++failed;
    std::printf("[%s] %2d %-34s (%.1f s)\n", r.passed ? "PASS" : "FAIL", r.id,
                r.name.c_str(), r.wall_seconds);
    std::printf("         %s\n", r.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed (seed %" PRIu64 ")\n", only.size() - failed,
              only.size(), seed);
  if (failed) throw SimulationError(std::to_string(failed) + " acceptance criteria failed");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"declab: numerical laboratory for a coupled damped wave pair"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  Common c;
  std::string config_path, csv_path, trace_path;
  int n_rays = 10000;
  double horizon = 10.0;
  double tol = 1e-10;
  int max_iter = 40;
  std::vector<int> only;

  auto* sim = app.add_subcommand("simulate", "Run a scenario config, write its energy CSV");
  sim->add_option("config", config_path, "Scenario config file")->required();
  add_common(sim, c, true);

  auto* fit = app.add_subcommand("fit", "Fit the exponential decay rate of an energy CSV");
  fit->add_option("csv", csv_path, "Energy history CSV")->required();

  auto* gcc = app.add_subcommand("gcc", "Check the damping region for geometric control");
  gcc->add_option("config", config_path, "Scenario config file")->required();
  gcc->add_option("--rays", n_rays, "Stratified ray budget")->capture_default_str();
  gcc->add_option("--horizon", horizon, "Ray horizon (trip length)")->capture_default_str();
  add_common(gcc, c, true);

  auto* ode = app.add_subcommand(
      "ode-observability", "Billiard-ray transport diagnostic: Gramian and rotation test");
  ode->add_option("input", trace_path, "Transport config or trace CSV (s,a,b)")->required();

  auto* pic = app.add_subcommand("picard", "Fixed-point solve of a semilinear scenario");
  pic->add_option("config", config_path, "Scenario config file")->required();
  pic->add_option("--tol", tol, "Residual tolerance")->capture_default_str();
  pic->add_option("--max-iter", max_iter, "Iteration budget")->capture_default_str();

  auto* suite = app.add_subcommand("suite", "Run the acceptance suite");
  suite->add_option("--criterion", only, "Run only these criterion ids (default: all)");
  add_common(suite, c, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints the error plus usage
    return 1;
  }

  try {
    if (sim->parsed()) return cmd_simulate(config_path, c);
    if (fit->parsed()) return cmd_fit(csv_path);
    if (gcc->parsed()) return cmd_gcc(config_path, n_rays, horizon, c);
    if (ode->parsed()) return cmd_ode_observability(trace_path);
    if (pic->parsed()) return cmd_picard(config_path, tol, max_iter);
    if (suite->parsed()) return cmd_suite(c, only);
  } catch (const ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
