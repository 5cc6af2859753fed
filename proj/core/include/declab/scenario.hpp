#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>

#include "declab/config.hpp"
#include "declab/trajectory.hpp"

namespace declab::lab {

using geometry::GridPtr;
using geometry::RegionSpec;
using semilinear::NonlinearityPair;

/// Validated scenario description, decoupled from the config file format.
struct ScenarioConfig {
  std::string name = "scenario";

  struct Grid {
    int dimension = 1;
    double lx = 1, ly = 1;
    int nx = 0, ny = 0;
  } grid;

  std::map<std::string, RegionSpec> regions;

  struct Coefficient {
    std::string region;  // empty = absent (coupling only)
    double amplitude = 0;
    double floor = 0;
  } damping, coupling;

  struct Forms {
    std::string u = "zero", v = "zero";  // zero | cubic | power | focusing_cubic
    double p_u = 4, p_v = 4;
  } nonlinearity;

  struct Data {
    std::string kind = "eigenmode";  // eigenmode | gaussian | random_band
    std::string component = "u";     // eigenmode/gaussian carrier
    int mode_x = 1, mode_y = 1;
    double sigma = 0.25;
    std::array<double, 2> center{0.5, 0.5};
    int band = 8;
    std::uint64_t seed = 1;
    double energy = 1.0;
  } data;

  struct Time {
    double horizon = 1;
    double cfl_safety = 0.5;
    int stride = 1;
  } time;

  struct Output {
    std::string csv;  // empty = no file
    bool fields = false;
    double guard_ceiling = std::numeric_limits<double>::infinity();
  } output;

  static ScenarioConfig from_table(const ConfigTable& t);
  static ScenarioConfig from_file(const std::string& path);
};

/// Fully built scenario: grid, coefficient fields, nonlinearities, initial
/// state (energy-normalized), and run policy.
struct Scenario {
  std::string name;
  GridPtr grid;
  geometry::CoefficientField a, b;
  NonlinearityPair fpair;
  wave::SystemState initial;
  double horizon = 1;
  double dt = 0;
  int n_steps = 0;
  int stride = 1;
  std::string csv_name;
  bool record_fields = false;
  double guard_ceiling = std::numeric_limits<double>::infinity();
  /// Coupling support escapes the floor-active damped set: the decay
  /// hypotheses fail, but the run stays legal (counterexample studies).
  bool hypothesis_violating = false;
};

/// Step size policy: dt = cfl_safety * (stability limit), then rounded down
/// so an integer number of steps lands exactly on the horizon.
double scenario_dt(const geometry::GridDomain& grid, double horizon, double cfl_safety,
                   int& n_steps);

Scenario build_scenario(const ScenarioConfig& cfg);

/// March the built scenario (linear or semilinear as configured).
wave::TrajectoryRecord run_scenario(const Scenario& s);

/// Initial data builders. Displacement-only (velocities 0), not normalized.
wave::SystemState eigenmode_data(GridPtr grid, int mode_x, int mode_y,
                                 const std::string& component);
/// Gaussian bump tapered by the fundamental mode so it vanishes on the boundary.
wave::SystemState gaussian_bump_data(GridPtr grid, double sigma,
                                     std::array<double, 2> center,
                                     const std::string& component);
/// Band-limited random data: fixed-order seeded mode coefficients with 1/k^2
/// decay, so refining the grid reproduces the same continuum function.
wave::SystemState random_band_data(GridPtr grid, int band, std::uint64_t seed);

/// Scale the state so its total energy hits `target`: bisection on the scale
/// with the potential included when it is nonnegative (defocusing forms);
/// focusing forms normalize the quadratic part alone.
void normalize_energy(wave::SystemState& state, const NonlinearityPair& fpair, double target);

/// The pinned benchmark configuration (mirrored by configs/reference.toml):
/// 2D unit square, 129x129, damping collar of width 0.25 along two adjacent
/// sides (a region every billiard ray meets), coupling collar of width 0.2
/// strictly inside it, defocusing cubic on both components, tapered Gaussian
/// data, horizon 40.
ScenarioConfig reference_config();

}  // namespace declab::lab
