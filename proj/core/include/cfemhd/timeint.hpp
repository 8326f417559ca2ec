// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <vector>

#include "cfemhd/mhd.hpp"

namespace cfemhd {

using RhsFunction = std::function<RatesBundle(const State&)>;

// Right-hand side with the lagged B rate used by supg: every call reads the
// B rate of the previous completed call (zero before the first).
class RhsEvaluator {
 public:
  RhsEvaluator(const Discretization& d, Formulation f, double dt);
  RatesBundle operator()(const State& s);
  void reset() { lag_.clear(); }

 private:
  const Discretization* d_;
  Formulation f_;
  double dt_;
  std::vector<double> lag_;
};

// Shu–Osher SSPRK3 over (n, V, thermal, B, A). Checks density positivity
// and, for div forms, the strong divergence of B after the step; violations
// raise PositivityError / std::runtime_error carrying the step index.
State ssprk3_step(const State& u, double dt, const RhsFunction& rhs, const Discretization& d, const Formulation& f,
                  long step = 0);

struct StepperConfig {
  double dt = 0.0;
  double t_max = 0.0;
  long diag_every = 1;
  long output_every = 0;  // 0: no snapshots
};

struct RunSinks {
  std::function<void(long step, const State&)> diagnostics;
  std::function<void(long step, const State&)> snapshot;
};

// Number of steps that reach t_max (ceil with a small guard against
// round-off in t_max / dt).
long step_count(double t_max, double dt);

// Diagnostics are emitted at step 0, every diag_every steps and at the last
// step; snapshots likewise when output_every > 0.
State run(State s, const Discretization& d, const Formulation& f, const StepperConfig& cfg, const RunSinks& sinks);

}  // namespace cfemhd
