// SPDX-License-Identifier: Apache-2.0
#include <catch_amalgamated.hpp>

#include <cmath>

#include "cfemhd/diagnostics.hpp"
#include "cfemhd/timeint.hpp"
#include "cfemhd/vortex.hpp"
#include "support.hpp"

using namespace cfemhd;
using Catch::Approx;

namespace {

State unit_state(const Discretization& d, const Formulation& f)
{
  State s = zero_state(d, f);
  for (Field* x : {&s.n, &s.V, &s.thermal, &s.B, &s.A}) x->coefficients().assign(x->size(), 1.0);
  return s;
}

RatesBundle scaled_rates(const State& s, double lambda)
{
  RatesBundle r;
  auto m = [&](const Field& x) {
    auto v = x.coefficients();
    for (double& c : v) c *= lambda;
    return v;
  };
  r.n = m(s.n);
  r.V = m(s.V);
  r.thermal = m(s.thermal);
  r.B = m(s.B);
  r.A = m(s.A);
  return r;
}

}  // namespace

TEST_CASE("Step counts", "[timeint]")
{
  CHECK(step_count(0.0, 0.1) == 0);
  CHECK(step_count(10.0, 0.025) == 400);
  CHECK(step_count(2.0, 1.0 / 160) == 320);
  CHECK(step_count(2.0, 1.0 / 80) == 160);
  CHECK(step_count(1.0, 0.3) == 4);
  CHECK_THROWS_AS(step_count(1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(step_count(-1.0, 0.1), std::invalid_argument);
}

TEST_CASE("SSPRK3 on linear decay", "[timeint]")
{
  Discretization d({1, 1, 1}, {1, 1, 1}, 1);
  Formulation f;
  const State u = unit_state(d, f);
  SECTION("zero rate leaves the state and advances time")
  {
    const State v = ssprk3_step(u, 0.1, [](const State& s) { return scaled_rates(s, 0.0); }, d, f);
    CHECK(v.t == Approx(0.1));
    CHECK(v.n.coefficients() == u.n.coefficients());
    CHECK(v.B.coefficients() == u.B.coefficients());
  }
  SECTION("third-order Taylor polynomial")
  {
    const State v = ssprk3_step(u, 0.1, [](const State& s) { return scaled_rates(s, -1.0); }, d, f);
    const double y1 = 1.0 - 0.1 + 0.01 / 2 - 0.001 / 6;
    for (const Field* x : {&v.n, &v.V, &v.thermal, &v.B, &v.A})
      for (double c : x->coefficients()) CHECK(c == Approx(y1).epsilon(1e-15));
    CHECK(y1 == Approx(0.9048333).epsilon(1e-7));
    CHECK(std::abs(y1 - std::exp(-0.1)) == Approx(4.1e-6).epsilon(0.02));
  }
  SECTION("order of accuracy")
  {
    double err[2];
    for (int i = 0; i < 2; ++i) {
      const int n = 10 << i;
      State s = u;
      for (int k = 0; k < n; ++k) s = ssprk3_step(s, 1.0 / n, [](const State& x) { return scaled_rates(x, -1.0); }, d, f);
      err[i] = std::abs(s.n[0] - std::exp(-1.0));
    }
    CHECK(std::log2(err[0] / err[1]) == Approx(3.0).margin(0.1));
  }
  SECTION("loss of positivity is reported with the step")
  {
    try {
      ssprk3_step(u, 3.0, [](const State& s) { return scaled_rates(s, -1.0); }, d, f, 17);
      FAIL("expected PositivityError");
    } catch (const PositivityError& e) {
      CHECK(e.step() == 17);
    }
  }
}

TEST_CASE("Div-form steps keep B solenoidal", "[timeint]")
{
  Discretization d({1, 1, 1}, {2, 2, 2}, 2);
  for (auto st : {Stabilization::None, Stabilization::Supg, Stabilization::Eta, Stabilization::Hm}) {
    Formulation f;
    f.stabilization = st;
    f.kappa_B = 1e-3;
    f.lambda = 0.25;
    State s = testing::random_state(d, f, 3, 0.1, false);
    RhsEvaluator ev(d, f, 1e-3);
    for (int i = 0; i < 3; ++i) s = ssprk3_step(s, 1e-3, [&](const State& x) { return ev(x); }, d, f, i);
    CHECK(norm_inf(d.div() * s.B.coefficients()) <= 1e-14 * norm_inf(s.B.coefficients()) / d.mesh().min_spacing());
  }
}

TEST_CASE("Lagged B rate", "[timeint]")
{
  Discretization d({1, 1, 1}, {2, 2, 2}, 1);
  Formulation f;
  f.stabilization = Stabilization::Supg;
  f.lambda = 0.5;
  const State s = testing::random_state(d, f, 4);
  RhsEvaluator ev(d, f, 0.01);
  const auto r0 = ev(s);
  const auto expect0 = evaluate_rates(d, s, f, 0.01, nullptr);
  CHECK(r0.B == expect0.B);
  const auto r1 = ev(s);
  const auto expect1 = evaluate_rates(d, s, f, 0.01, &r0.B);
  CHECK(r1.B == expect1.B);
  ev.reset();
  CHECK(ev(s).B == expect0.B);
}

TEST_CASE("Run cadence", "[timeint]")
{
  Discretization d({10, 10, 2}, {4, 4, 1}, 1);
  Formulation f;
  f.kappa_B = 1e-3;
  f.stabilization = Stabilization::Eta;
  const State s0 = initialize_vortex(d, f, VortexParams{});
  std::vector<long> rows, snaps;
  std::vector<double> times;
  RunSinks sinks{[&](long step, const State& s) {
                   rows.push_back(step);
                   times.push_back(s.t);
                 },
                 [&](long step, const State&) { snaps.push_back(step); }};

  SECTION("zero duration emits the initial row")
  {
    run(s0, d, f, StepperConfig{0.1, 0.0, 1, 1}, sinks);
    CHECK(rows == std::vector<long>{0});
    CHECK(snaps == std::vector<long>{0});
  }
  SECTION("cadence and last step")
  {
    const State end = run(s0, d, f, StepperConfig{0.1, 0.7, 3, 0}, sinks);
    CHECK(rows == std::vector<long>{0, 3, 6, 7});
    CHECK(snaps.empty());
    CHECK(times.back() == Approx(0.7).epsilon(1e-15));
    CHECK(end.t == times.back());
  }
  SECTION("every step")
  {
    run(s0, d, f, StepperConfig{0.025, 0.1, 1, 2}, sinks);
    CHECK(rows.size() == 5);
    CHECK(snaps == std::vector<long>{0, 2, 4});
  }
  CHECK_THROWS_AS(run(s0, d, f, StepperConfig{0.1, 1.0, 0, 0}, sinks), std::invalid_argument);
}
