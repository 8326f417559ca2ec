// SPDX-License-Identifier: Apache-2.0
#include "cfemhd/timeint.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cfemhd {

namespace {

// out = a x + b (y + dt r)
void combine(std::vector<double>& out, double a, const std::vector<double>& x, double b, const std::vector<double>& y,
             double dt, const std::vector<double>& r)
{
  out.resize(x.size());
  for (size_t i = 0; i < x.size(); ++i) out[i] = a * x[i] + b * (y[i] + dt * r[i]);
}

State stage(const State& u, double a, const State& y, double b, double dt, const RatesBundle& r)
{
  State out = u;
  combine(out.n.coefficients(), a, u.n.coefficients(), b, y.n.coefficients(), dt, r.n);
  combine(out.V.coefficients(), a, u.V.coefficients(), b, y.V.coefficients(), dt, r.V);
  combine(out.thermal.coefficients(), a, u.thermal.coefficients(), b, y.thermal.coefficients(), dt, r.thermal);
  combine(out.B.coefficients(), a, u.B.coefficients(), b, y.B.coefficients(), dt, r.B);
  combine(out.A.coefficients(), a, u.A.coefficients(), b, y.A.coefficients(), dt, r.A);
  out.t = a * u.t + b * (y.t + dt);
  return out;
}

}  // namespace

RhsEvaluator::RhsEvaluator(const Discretization& d, Formulation f, double dt) : d_(&d), f_(f), dt_(dt) {}

RatesBundle RhsEvaluator::operator()(const State& s)
{
  const bool supg = f_.stabilization == Stabilization::Supg;
  RatesBundle r = evaluate_rates(*d_, s, f_, dt_, supg && !lag_.empty() ? &lag_ : nullptr);
  if (supg) lag_ = r.B;
  return r;
}

State ssprk3_step(const State& u, double dt, const RhsFunction& rhs, const Discretization& d, const Formulation& f,
                  long step)
{
  State out;
  try {
    const State u1 = stage(u, 0.0, u, 1.0, dt, rhs(u));
    const State u2 = stage(u, 0.75, u1, 0.25, dt, rhs(u1));
    out = stage(u, 1.0 / 3.0, u2, 2.0 / 3.0, dt, rhs(u2));
    out.t = u.t + dt;
    check_density(d, out.n);
  } catch (const DegenerateDensityError& e) {
    throw PositivityError("step " + std::to_string(step) + ": " + e.what(), step);
  }
  if (f.div_form()) {
    const auto divb = d.div() * out.B.coefficients();
    const double scale = norm_inf(out.B.coefficients());
    if (norm_inf(divb) > 1e-12 * std::max(scale, 1e-300))
      throw std::runtime_error("step " + std::to_string(step) + ": strong divergence of B lost");
  }
  return out;
}

long step_count(double t_max, double dt)
{
  if (!(dt > 0.0)) throw std::invalid_argument("step_count: dt must be positive");
  if (t_max < 0.0) throw std::invalid_argument("step_count: t_max must be nonnegative");
  return static_cast<long>(std::ceil(t_max / dt - 1e-9));
}

State run(State s, const Discretization& d, const Formulation& f, const StepperConfig& cfg, const RunSinks& sinks)
{
  if (cfg.diag_every < 1) throw std::invalid_argument("run: diagnostics cadence must be at least 1");
  if (cfg.output_every < 0) throw std::invalid_argument("run: output cadence must be nonnegative");
  const long steps = step_count(cfg.t_max, cfg.dt);
  const double t0 = s.t;
  RhsEvaluator ev(d, f, cfg.dt);
  RhsFunction rhs = [&ev](const State& x) { return ev(x); };
  auto emit = [&](long step) {
    const bool last = step == steps;
    if (sinks.diagnostics && (step % cfg.diag_every == 0 || last)) sinks.diagnostics(step, s);
    if (sinks.snapshot && cfg.output_every > 0 && (step % cfg.output_every == 0 || last)) sinks.snapshot(step, s);
  };
  emit(0);
  for (long step = 1; step <= steps; ++step) {
    s = ssprk3_step(s, cfg.dt, rhs, d, f, step);
    s.t = t0 + static_cast<double>(step) * cfg.dt;
    emit(step);
  }
  return s;
}

}  // namespace cfemhd
