// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include "cfemhd/diagnostics.hpp"
#include "cfemhd/mhd.hpp"
#include "cfemhd/timeint.hpp"
#include "cfemhd/vortex.hpp"

namespace {

using namespace cfemhd;

Formulation formulation(MagneticKind m, Stabilization s)
{
  Formulation f;
  f.magnetic = m;
  f.stabilization = s;
  f.kappa_B = s == Stabilization::Eta ? 1e-3 : (s == Stabilization::Hm ? 0.1 : 0.0);
  f.lambda = s == Stabilization::Supg ? 0.25 : 0.0;
  return f;
}

void BM_MassSolveS1(benchmark::State& st)
{
  Discretization d({10, 10, 2}, {static_cast<int>(st.range(0)), static_cast<int>(st.range(0)), 4}, 2);
  std::vector<double> rhs(d.space(1)->size(), 1.0);
  for (auto _ : st) benchmark::DoNotOptimize(d.mass(1).solve(rhs));
}
BENCHMARK(BM_MassSolveS1)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_Rates(benchmark::State& st)
{
  const auto f = formulation(static_cast<MagneticKind>(st.range(0)), static_cast<Stabilization>(st.range(1)));
  Discretization d({10, 10, 2}, {20, 20, 4}, 2);
  const State s = initialize_vortex(d, f, VortexParams{});
  for (auto _ : st) benchmark::DoNotOptimize(evaluate_rates(d, s, f, 0.025));
}
BENCHMARK(BM_Rates)
    ->Args({static_cast<int>(MagneticKind::Div), static_cast<int>(Stabilization::None)})
    ->Args({static_cast<int>(MagneticKind::Div), static_cast<int>(Stabilization::Eta)})
    ->Args({static_cast<int>(MagneticKind::Curl), static_cast<int>(Stabilization::Eta)})
    ->Unit(benchmark::kMillisecond);

void BM_Diagnostics(benchmark::State& st)
{
  const auto f = formulation(MagneticKind::Div, Stabilization::None);
  Discretization d({10, 10, 2}, {20, 20, 4}, 2);
  const State s = initialize_vortex(d, f, VortexParams{});
  for (auto _ : st) benchmark::DoNotOptimize(divergence_report(d, s, f));
}
BENCHMARK(BM_Diagnostics)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
