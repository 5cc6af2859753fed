#include "declab/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "declab/energy.hpp"
#include "declab/errors.hpp"
#include "declab/semilinear.hpp"

namespace declab::lab {

namespace {

constexpr double kPi = std::numbers::pi;

geometry::Side side_from_string(const std::string& s) {
  if (s == "left") return geometry::Side::left;
  if (s == "right") return geometry::Side::right;
  if (s == "bottom") return geometry::Side::bottom;
  if (s == "top") return geometry::Side::top;
  throw ValidationError("unknown side '" + s + "' (want left/right/bottom/top)");
}

RegionSpec region_from_table(const ConfigTable& t, const std::string& section, int dim) {
  t.restrict_keys(section, {"kind", "boxes", "sides", "width", "mollification"});
  const std::string kind = t.get_string(section, "kind");
  const double moll = t.get_number_or(section, "mollification", 0.0);
  if (kind == "whole_domain") return RegionSpec::whole_domain();
  if (kind == "boundary_strip")
    return RegionSpec::boundary_strip(t.get_number(section, "width"), moll);
  if (kind == "side_collar") {
    std::vector<geometry::Side> sides;
    for (const auto& s : t.get_string_array(section, "sides"))
      sides.push_back(side_from_string(s));
    return RegionSpec::side_collar(sides, t.get_number(section, "width"), moll);
  }
  if (kind == "boxes") {
    const auto flat = t.get_number_array(section, "boxes");
    const std::size_t span = dim == 1 ? 2 : 4;
    if (flat.empty() || flat.size() % span != 0)
      throw ValidationError("'" + section + ".boxes' wants " + std::to_string(span) +
                            " numbers per box (lo/hi per axis)");
    std::vector<geometry::Box> boxes;
    for (std::size_t i = 0; i < flat.size(); i += span) {
      geometry::Box b;
      b.lo[0] = flat[i];
      b.hi[0] = flat[i + 1];
      if (dim == 2) {
        b.lo[1] = flat[i + 2];
        b.hi[1] = flat[i + 3];
      }
      boxes.push_back(b);
    }
    return RegionSpec::union_of(std::move(boxes), moll);
  }
  throw ValidationError("unknown region kind '" + kind + "' in [" + section + "]");
}

ScenarioConfig::Coefficient coefficient_from_table(const ConfigTable& t,
                                                   const std::string& section) {
  ScenarioConfig::Coefficient c;
  if (!t.has_section(section)) return c;
  t.restrict_keys(section, {"region", "amplitude", "floor"});
  c.region = t.get_string(section, "region");
  c.amplitude = t.get_number(section, "amplitude");
  c.floor = t.get_number(section, "floor");
  return c;
}

semilinear::Nonlinearity form_from_string(const std::string& form, double p) {
  if (form == "zero") return semilinear::Nonlinearity::zero();
  if (form == "cubic") return semilinear::Nonlinearity::cubic();
  if (form == "power") return semilinear::Nonlinearity::power(p);
  if (form == "focusing_cubic") return semilinear::Nonlinearity::focusing_cubic();
  throw ValidationError("unknown nonlinearity form '" + form +
                        "' (want zero/cubic/power/focusing_cubic)");
}

}  // namespace

ScenarioConfig ScenarioConfig::from_table(const ConfigTable& t) {
  for (const auto& sec : t.section_names()) {
    static const char* known[] = {"scenario", "grid",  "damping", "coupling",
                                  "nonlinearity", "data", "time",    "output"};
    const bool named_region = sec.rfind("regions.", 0) == 0 && sec.size() > 8;
    if (!named_region &&
        std::none_of(std::begin(known), std::end(known),
                     [&](const char* k) { return sec == k; }))
      throw ValidationError("unknown config section [" + sec + "]");
  }

  ScenarioConfig cfg;
  t.restrict_keys("scenario", {"name"});
  cfg.name = t.get_string_or("scenario", "name", "scenario");

  t.restrict_keys("grid", {"dimension", "lx", "ly", "nx", "ny"});
  cfg.grid.dimension = static_cast<int>(t.get_integer("grid", "dimension"));
  if (cfg.grid.dimension != 1 && cfg.grid.dimension != 2)
    throw ValidationError("grid.dimension must be 1 or 2");
  cfg.grid.lx = t.get_number_or("grid", "lx", 1.0);
  cfg.grid.ly = t.get_number_or("grid", "ly", 1.0);
  cfg.grid.nx = static_cast<int>(t.get_integer("grid", "nx"));
  cfg.grid.ny = cfg.grid.dimension == 2 ? static_cast<int>(t.get_integer("grid", "ny")) : 1;

  for (const auto& sec : t.section_names())
    if (sec.rfind("regions.", 0) == 0)
      cfg.regions.emplace(sec.substr(8), region_from_table(t, sec, cfg.grid.dimension));

  cfg.damping = coefficient_from_table(t, "damping");
  cfg.coupling = coefficient_from_table(t, "coupling");

  t.restrict_keys("nonlinearity", {"u", "v", "p_u", "p_v"});
  cfg.nonlinearity.u = t.get_string_or("nonlinearity", "u", "zero");
  cfg.nonlinearity.v = t.get_string_or("nonlinearity", "v", "zero");
  cfg.nonlinearity.p_u = t.get_number_or("nonlinearity", "p_u", 4.0);
  cfg.nonlinearity.p_v = t.get_number_or("nonlinearity", "p_v", 4.0);

  t.restrict_keys("data", {"kind", "component", "mode_x", "mode_y", "sigma", "center",
                           "band", "seed", "energy"});
  cfg.data.kind = t.get_string_or("data", "kind", "eigenmode");
  cfg.data.component = t.get_string_or("data", "component", "u");
  cfg.data.mode_x = static_cast<int>(t.get_integer_or("data", "mode_x", 1));
  cfg.data.mode_y = static_cast<int>(t.get_integer_or("data", "mode_y", 1));
  cfg.data.sigma = t.get_number_or("data", "sigma", 0.25);
  if (t.has("data", "center")) {
    const auto c = t.get_number_array("data", "center");
    if (c.size() != static_cast<std::size_t>(cfg.grid.dimension))
      throw ValidationError("data.center wants one coordinate per dimension");
    cfg.data.center = {c[0], c.size() > 1 ? c[1] : 0.0};
  } else {
    cfg.data.center = {cfg.grid.lx / 2, cfg.grid.dimension == 2 ? cfg.grid.ly / 2 : 0.0};
  }
  cfg.data.band = static_cast<int>(t.get_integer_or("data", "band", 8));
  const long seed = t.get_integer_or("data", "seed", 1);
  if (seed < 0) throw ValidationError("data.seed must be nonnegative");
  cfg.data.seed = static_cast<std::uint64_t>(seed);
  cfg.data.energy = t.get_number_or("data", "energy", 1.0);

  t.restrict_keys("time", {"horizon", "cfl_safety", "stride"});
  cfg.time.horizon = t.get_number("time", "horizon");
  cfg.time.cfl_safety = t.get_number_or("time", "cfl_safety", 0.5);
  cfg.time.stride = static_cast<int>(t.get_integer_or("time", "stride", 1));

  t.restrict_keys("output", {"csv", "fields", "guard_ceiling"});
  cfg.output.csv = t.get_string_or("output", "csv", "");
  cfg.output.fields = t.get_bool_or("output", "fields", false);
  cfg.output.guard_ceiling = t.get_number_or("output", "guard_ceiling",
                                             std::numeric_limits<double>::infinity());
  return cfg;
}

ScenarioConfig ScenarioConfig::from_file(const std::string& path) {
  return from_table(ConfigTable::parse_file(path));
}

double scenario_dt(const geometry::GridDomain& grid, double horizon, double cfl_safety,
                   int& n_steps) {
  if (!(horizon > 0)) throw ValidationError("time horizon must be positive");
  if (!(cfl_safety > 0) || cfl_safety > 1.0)
    throw ValidationError("cfl_safety must lie in (0, 1]");
  const double dt0 = cfl_safety * grid.cfl_limit();
  n_steps = std::max(1, static_cast<int>(std::ceil(horizon / dt0)));
  return horizon / n_steps;
}

wave::SystemState eigenmode_data(GridPtr grid, int mode_x, int mode_y,
                                 const std::string& component) {
  if (component != "u" && component != "v")
    throw ValidationError("eigenmode component must be 'u' or 'v'");
  const int dim = grid->dimension();
  if (mode_x < 1 || mode_x > grid->nx() - 2)
    throw ValidationError("mode_x out of the resolvable range");
  if (dim == 2 && (mode_y < 1 || mode_y > grid->ny() - 2))
    throw ValidationError("mode_y out of the resolvable range");
  auto state = wave::SystemState::zero(grid);
  auto& field = component == "u" ? state.u : state.v;
  for (int iy = 0; iy < grid->ny(); ++iy)
    for (int ix = 0; ix < grid->nx(); ++ix) {
      const auto p = grid->position(grid->index(ix, iy));
      double val = std::sin(mode_x * kPi * p[0] / grid->lx());
      if (dim == 2) val *= std::sin(mode_y * kPi * p[1] / grid->ly());
      field[grid->index(ix, iy)] = val;
    }
  state.enforce_dirichlet();
  return state;
}

wave::SystemState gaussian_bump_data(GridPtr grid, double sigma,
                                     std::array<double, 2> center,
                                     const std::string& component) {
  if (component != "u" && component != "v")
    throw ValidationError("gaussian component must be 'u' or 'v'");
  if (!(sigma > 0)) throw ValidationError("gaussian sigma must be positive");
  const int dim = grid->dimension();
  auto state = wave::SystemState::zero(grid);
  auto& field = component == "u" ? state.u : state.v;
  for (int iy = 0; iy < grid->ny(); ++iy)
    for (int ix = 0; ix < grid->nx(); ++ix) {
      const auto p = grid->position(grid->index(ix, iy));
      double r2 = (p[0] - center[0]) * (p[0] - center[0]);
      double taper = std::sin(kPi * p[0] / grid->lx());
      if (dim == 2) {
        r2 += (p[1] - center[1]) * (p[1] - center[1]);
        taper *= std::sin(kPi * p[1] / grid->ly());
      }
      field[grid->index(ix, iy)] = std::exp(-r2 / (2 * sigma * sigma)) * taper;
    }
  state.enforce_dirichlet();
  return state;
}

wave::SystemState random_band_data(GridPtr grid, int band, std::uint64_t seed) {
  const int dim = grid->dimension();
  const int max_band = (dim == 2 ? std::min(grid->nx(), grid->ny()) : grid->nx()) - 2;
  if (band < 1 || band > max_band)
    throw ValidationError("band must lie in [1, resolvable modes]");

  // Mode tables: sx[k][ix] = sin((k+1) pi x / lx).
  auto mode_table = [&](int n, double extent, double spacing) {
    std::vector<std::vector<double>> t(band, std::vector<double>(n));
    for (int k = 0; k < band; ++k)
      for (int i = 0; i < n; ++i)
        t[k][i] = std::sin((k + 1) * kPi * (i * spacing) / extent);
    return t;
  };
  const auto sx = mode_table(grid->nx(), grid->lx(), grid->hx());
  const auto sy = dim == 2 ? mode_table(grid->ny(), grid->ly(), grid->hy())
                           : std::vector<std::vector<double>>{};

  // Coefficients drawn in a fixed order independent of the grid, decaying fast
  // enough that the truncated series is a fixed smooth continuum function.
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  auto state = wave::SystemState::zero(grid);
  for (auto* field : {&state.u, &state.v, &state.ut, &state.vt}) {
    if (dim == 1) {
      for (int k = 0; k < band; ++k) {
        const double c = normal(rng) / ((k + 1) * (k + 1));
        for (int i = 0; i < grid->nx(); ++i) (*field)[i] += c * sx[k][i];
      }
    } else {
      for (int kx = 0; kx < band; ++kx)
        for (int ky = 0; ky < band; ++ky) {
          const double c =
              normal(rng) / ((kx + 1) * (kx + 1) + (ky + 1) * (ky + 1));
          for (int iy = 0; iy < grid->ny(); ++iy) {
            const double cy = c * sy[ky][iy];
            double* row = field->data() + grid->index(0, iy);
            for (int ix = 0; ix < grid->nx(); ++ix) row[ix] += cy * sx[kx][ix];
          }
        }
    }
  }
  state.enforce_dirichlet();
  return state;
}

void normalize_energy(wave::SystemState& state, const NonlinearityPair& fpair,
                      double target) {
  if (!(target > 0)) throw ValidationError("target energy must be positive");
  const double quad = 0.5 * wave::h_norm_sq(state);
  if (quad == 0) throw ValidationError("cannot normalize identically zero data");

  const auto defocusing = [](const semilinear::Nonlinearity& n) {
    using Form = semilinear::Nonlinearity::Form;
    return n.form == Form::zero || n.form == Form::cubic || n.form == Form::power;
  };
  if (fpair.is_zero() || !defocusing(fpair.f1) || !defocusing(fpair.f2)) {
    state.scale(std::sqrt(target / quad));
    return;
  }

  // Nonnegative potential: total energy is strictly increasing in the scale,
  // and the quadratic part alone reaches the target by s_hi, so [0, s_hi]
  // brackets the root.
  auto total_at = [&](double s) {
    wave::SystemState scaled = state;
    scaled.scale(s);
    return wave::energy(scaled, &fpair).total;
  };
  double lo = 0, hi = std::sqrt(target / quad);
  for (int it = 0; it < 200 && (hi - lo) > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (total_at(mid) < target ? lo : hi) = mid;
  }
  state.scale(0.5 * (lo + hi));
}

Scenario build_scenario(const ScenarioConfig& cfg) {
  Scenario s;
  s.name = cfg.name;
  s.grid = cfg.grid.dimension == 1
               ? geometry::make_interval(cfg.grid.lx, cfg.grid.nx)
               : geometry::make_rectangle(cfg.grid.lx, cfg.grid.ly, cfg.grid.nx, cfg.grid.ny);

  auto lookup = [&](const std::string& name) -> const RegionSpec& {
    auto it = cfg.regions.find(name);
    if (it == cfg.regions.end())
      throw ValidationError("unknown region '" + name + "' (no [regions." + name +
                            "] section)");
    return it->second;
  };
  s.a = cfg.damping.region.empty()
            ? geometry::zero_coefficient(s.grid)
            : geometry::build_coefficient(lookup(cfg.damping.region), s.grid,
                                          cfg.damping.amplitude, cfg.damping.floor);
  s.b = cfg.coupling.region.empty()
            ? geometry::zero_coefficient(s.grid)
            : geometry::build_coefficient(lookup(cfg.coupling.region), s.grid,
                                          cfg.coupling.amplitude, cfg.coupling.floor);
  // Coupling support escaping the floor-active damped set breaks the decay
  // hypotheses but stays runnable for counterexample studies; the run is
  // tagged instead of rejected.
  s.hypothesis_violating = !s.b.is_zero() && !geometry::check_containment(s.b, s.a);

  s.fpair = NonlinearityPair{form_from_string(cfg.nonlinearity.u, cfg.nonlinearity.p_u),
                             form_from_string(cfg.nonlinearity.v, cfg.nonlinearity.p_v)};

  if (cfg.data.kind == "eigenmode")
    s.initial = eigenmode_data(s.grid, cfg.data.mode_x, cfg.data.mode_y, cfg.data.component);
  else if (cfg.data.kind == "gaussian")
    s.initial = gaussian_bump_data(s.grid, cfg.data.sigma, cfg.data.center,
                                   cfg.data.component);
  else if (cfg.data.kind == "random_band")
    s.initial = random_band_data(s.grid, cfg.data.band, cfg.data.seed);
  else
    throw ValidationError("unknown data kind '" + cfg.data.kind +
                          "' (want eigenmode/gaussian/random_band)");
  normalize_energy(s.initial, s.fpair, cfg.data.energy);

  s.horizon = cfg.time.horizon;
  s.dt = scenario_dt(*s.grid, cfg.time.horizon, cfg.time.cfl_safety, s.n_steps);
  if (cfg.time.stride < 1) throw ValidationError("time.stride must be at least 1");
  s.stride = cfg.time.stride;
  s.csv_name = cfg.output.csv;
  s.record_fields = cfg.output.fields;
  s.guard_ceiling = cfg.output.guard_ceiling;
  return s;
}

wave::TrajectoryRecord run_scenario(const Scenario& s) {
  wave::RunOptions opts;
  opts.stride = s.stride;
  opts.record_fields = s.record_fields;
  opts.guard_ceiling = s.guard_ceiling;
  auto traj = s.fpair.is_zero()
                  ? wave::run_linear(s.initial, s.a, s.b, s.dt, s.n_steps, nullptr, opts)
                  : wave::run_semilinear(s.initial, s.a, s.b, s.fpair, s.dt, s.n_steps, opts);
  traj.hypothesis_violating = s.hypothesis_violating;
  return traj;
}

ScenarioConfig reference_config() {
  ScenarioConfig cfg;
  cfg.name = "reference";
  cfg.grid = {2, 1.0, 1.0, 129, 129};

  // Two adjacent boundary collars: the coupling collar (width 0.2, mollified
  // over 0.025) stays strictly inside the damping core (width 0.25).
  cfg.regions.emplace(
      "damping",
      RegionSpec::side_collar({geometry::Side::left, geometry::Side::bottom}, 0.25, 0.05));
  cfg.regions.emplace(
      "coupling",
      RegionSpec::side_collar({geometry::Side::left, geometry::Side::bottom}, 0.2, 0.025));

  cfg.damping = {"damping", 1.0, 0.1};
  cfg.coupling = {"coupling", 1.0, 0.1};

  cfg.nonlinearity.u = "cubic";
  cfg.nonlinearity.v = "cubic";

  cfg.data.kind = "gaussian";
  cfg.data.component = "u";
  cfg.data.sigma = 0.25;
  cfg.data.center = {0.5, 0.5};
  cfg.data.energy = 1.0;

  cfg.time.horizon = 40.0;
  cfg.time.cfl_safety = 0.25;
  cfg.time.stride = 20;

  cfg.output.csv = "reference_energy.csv";
  return cfg;
}

}  // namespace declab::lab
