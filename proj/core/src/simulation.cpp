// SPDX-License-Identifier: Apache-2.0
#include "cfemhd/simulation.hpp"

#include <cstdio>

#include "cfemhd/vortex.hpp"

namespace cfemhd {

Simulation::Simulation(SimConfig config) : config_(std::move(config))
{
  config_.formulation.validate();
  SolverOptions opts;
  opts.rel_tol = config_.cg_tol;
  d_ = std::make_unique<Discretization>(config_.extents, config_.cells, config_.degree, opts);
}

State Simulation::initial_state() const { return initialize_vortex(*d_, config_.formulation, config_.vortex); }

DiagRow Simulation::diagnose(long step, const State& s) const
{
  const auto& f = config_.formulation;
  DiagRow r;
  r.step = step;
  r.time = s.t;
  const auto e = energies(*d_, s, f);
  r.H = e.H;
  r.KE = e.KE;
  r.IE = e.IE;
  r.ME = e.ME;
  r.HM = magnetic_helicity(*d_, s, f);
  const auto dv = divergence_report(*d_, s, f);
  r.divB = dv.strong;
  r.weak_divB = dv.weak;
  r.normal_jump = dv.normal_jump;
  const VortexBundle ref(config_.vortex, s.t);
  r.relerrB = relative_b_error(*d_, s, f, [&ref](const Vec3& x) { return ref.B(x); });
  return r;
}

Field Simulation::output_electric_field(const State& s) const
{
  const auto& f = config_.formulation;
  const auto ctx = electric_field(*d_, s, f, config_.dt);
  if (f.div_form()) return ctx.E;
  auto adot = vector_potential_rhs(*d_, s, f, ctx);
  for (double& v : adot) v = -v;
  return Field(d_->space(2), std::move(adot));
}

State Simulation::run(const RowSink& on_row, const SnapshotSink& on_snapshot) const
{
  StepperConfig sc;
  sc.dt = config_.dt;
  sc.t_max = config_.t_max;
  sc.diag_every = config_.diag_every;
  sc.output_every = config_.vtk_every;
  RunSinks sinks;
  if (on_row) sinks.diagnostics = [&](long step, const State& s) { on_row(diagnose(step, s)); };
  if (on_snapshot) sinks.snapshot = on_snapshot;
  return cfemhd::run(initial_state(), *d_, config_.formulation, sc, sinks);
}

std::string csv_header() { return "step,time,H,KE,IE,ME,HM,divB,weak_divB,normal_jump,relerrB\n"; }

std::string csv_row(const DiagRow& r)
{
  char buf[512];
  std::snprintf(buf, sizeof buf, "%ld,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.step, r.time,
                r.H, r.KE, r.IE, r.ME, r.HM, r.divB, r.weak_divB, r.normal_jump, r.relerrB);
  return buf;
}

}  // namespace cfemhd
