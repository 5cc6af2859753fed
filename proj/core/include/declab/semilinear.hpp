#pragma once

#include "declab/nonlinearity.hpp"
#include "declab/trajectory.hpp"

namespace declab::semilinear {

using wave::CoefficientField;
using wave::SystemState;
using wave::TrajectoryRecord;

/// Midpoint sources for one semilinear step: G = -f(u + dt/2 ut) nodewise.
void midpoint_sources(const SystemState& s, const NonlinearityPair& fpair, double dt,
                      std::vector<double>& g1, std::vector<double>& g2);

/// Throws SimulationError("numerical blow-up") if any field is non-finite.
void throw_on_blow_up(const SystemState& s);

/// One step of utt - Lu + a ut + b vt + f1(u) = 0 (and the v companion):
/// the linear step driven by frozen midpoint sources -f(u_mid), u_mid the
/// half-step displacement predictor. With f1 = f2 = 0 this is bitwise
/// step_linear with zero sources.
SystemState step_semilinear(const SystemState& state, const CoefficientField& a,
                            const CoefficientField& b, const NonlinearityPair& fpair,
                            double dt);

/// First sample at which a trajectory left the trust region: energy-space
/// norm above `ceiling`, or a non-finite field. Mirrors the continuation
/// criterion for local solutions; for defocusing data it must stay quiet.
struct GuardVerdict {
  bool fired = false;
  double time = 0;
  std::string reason;
};

GuardVerdict explosion_guard(const TrajectoryRecord& traj, double ceiling);

}  // namespace declab::semilinear
