#include <benchmark/benchmark.h>

#include "nonstat/bounds.hpp"
#include "nonstat/erm.hpp"
#include "nonstat/experiments.hpp"
#include "nonstat/finite_chain.hpp"

using namespace nonstat;

namespace {

void bm_simulate(benchmark::State& state) {
  const ChainModel model = study_model();
  const int n = static_cast<int>(state.range(0));
  std::uint64_t rep = 0;
  for (auto _ : state) {
    const Trajectory t = simulate(model, n, 1, rep++);
    benchmark::DoNotOptimize(t.data.data());
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(bm_simulate)->Arg(400)->Arg(4000)->Arg(40000);

void bm_erm_fit(benchmark::State& state) {
  const ChainModel model = study_model();
  const Trajectory traj = simulate(model, 400, 1);
  PredictorClass cls;
  cls.kind = PredictorKind::scalar_ar1;
  cls.rho_max = 0.95;
  const CoveringNet net = build_net(cls, 1.0 / 400.0);
  const int t_period = static_cast<int>(state.range(0));
  const LossSpec loss;
  for (auto _ : state) {
    const ErmResult r = erm_fit(traj, t_period, net, cls, loss);
    benchmark::DoNotOptimize(r.risk);
  }
}
BENCHMARK(bm_erm_fit)->Arg(1)->Arg(4)->Arg(20);

void bm_bernstein_tail(benchmark::State& state) {
  const BernsteinInputs in{.n = 100, .rho = 0.5, .m = 1.0, .v1 = 2.0, .v2 = 2.0};
  double x = 0.0;
  for (auto _ : state) {
    x += 0.01;
    if (x > 50.0) x = 0.0;
    benchmark::DoNotOptimize(bernstein_tail(in, x, true));
  }
}
BENCHMARK(bm_bernstein_tail);

void bm_ell_star(benchmark::State& state) {
  double x = 0.0;
  for (auto _ : state) {
    x += 0.001;
    if (x >= 0.999) x = 0.0;
    benchmark::DoNotOptimize(ell_star(x));
  }
}
BENCHMARK(bm_ell_star);

void bm_lemma1_check(benchmark::State& state) {
  const FiniteChain chain = random_finite_chain(4, 6);
  for (auto _ : state) {
    const Lemma1Report rep = check_lemma1(chain, functional_sum());
    benchmark::DoNotOptimize(rep.ok);
  }
}
BENCHMARK(bm_lemma1_check);

void bm_slope_heuristic(benchmark::State& state) {
  const StudyResult s = reproduce_simulation_study(1);
  std::vector<double> risks;
  for (const auto& row : s.fit.per_t) risks.push_back(row.empirical_risk);
  for (auto _ : state) {
    const SlopeResult r = slope_heuristic(risks);
    benchmark::DoNotOptimize(r.selected_t);
  }
}
BENCHMARK(bm_slope_heuristic);

}  // namespace

BENCHMARK_MAIN();
