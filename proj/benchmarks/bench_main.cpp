#include <benchmark/benchmark.h>

#include <vector>

#include "urnchain/oracle.hpp"
#include "urnchain/polya_urn.hpp"
#include "urnchain/simulation.hpp"
#include "urnchain/urn_chain.hpp"

using namespace urnchain;

namespace {

void BM_Draw(benchmark::State& state) {
  Rng rng(1);
  UrnState urn = new_urn(0.0257, 0.9743, 0.05);
  for (auto _ : state) {
    DrawOutcome outcome = draw(urn, rng);
    benchmark::DoNotOptimize(outcome.color);
    urn = outcome.updated_urn;
  }
}
BENCHMARK(BM_Draw);

void BM_BetaBinomialTable(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const BetaParams prior(0.514, 19.486);
  for (auto _ : state) {
    double total = 0.0;
    for (int f = 0; f <= n; ++f) total += beta_binomial_pmf(n, f, prior);
    benchmark::DoNotOptimize(total);
  }
}
BENCHMARK(BM_BetaBinomialTable)->Arg(20)->Arg(100)->Arg(500);

void BM_JointPmfTwo(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const BetaParams p1(2.0, 5.0), p2(1.0, 3.0);
  for (auto _ : state) {
    PmfTable table = joint_pmf_two(n, n, p1, p2);
    benchmark::DoNotOptimize(table.probs().data());
  }
}
BENCHMARK(BM_JointPmfTwo)->Arg(5)->Arg(10)->Arg(20);

void BM_QuadratureJointPmf(benchmark::State& state) {
  const std::vector<int> sizes = {3, 4};
  const std::vector<BetaParams> priors = {BetaParams(2.0, 5.0), BetaParams(1.0, 3.0)};
  for (auto _ : state) {
    PmfTable table = oracle::quadrature_joint_pmf(sizes, priors, static_cast<int>(state.range(0)));
    benchmark::DoNotOptimize(table.probs().data());
  }
}
BENCHMARK(BM_QuadratureJointPmf)->Arg(100)->Arg(200);

void BM_McJointPmf(benchmark::State& state) {
  const std::vector<int> sizes = {3, 4};
  const std::vector<BetaParams> priors = {BetaParams(2.0, 5.0), BetaParams(1.0, 3.0)};
  for (auto _ : state) {
    oracle::McJointPmf mc =
        oracle::mc_joint_pmf(sizes, priors, 100'000, 7, static_cast<int>(state.range(0)));
    benchmark::DoNotOptimize(mc.pmf.probs().data());
  }
}
BENCHMARK(BM_McJointPmf)->Arg(1)->Arg(4);

void BM_RunScenario(benchmark::State& state) {
  const std::vector<SimGroupConfig> groups = {
      {"A", 20, SpreadCurve(0.02, 0.0005), 0.05},
      {"B", 90, SpreadCurve(0.06, 0.0005), 0.05},
      {"C", 180, SpreadCurve(0.09, 0.0005), 0.05},
  };
  DefaultSchedule schedule;
  schedule.group_names = {"A", "B", "C"};
  schedule.counts = {
      {0, 3, 25}, {1, 1, 19}, {0, 0, 9},  {0, 4, 14}, {0, 5, 10}, {2, 8, 24},
      {1, 9, 15}, {0, 5, 14}, {0, 5, 9},  {0, 4, 9},  {0, 0, 9},  {0, 2, 7},
  };
  for (auto _ : state) {
    SimulationResult result = run_scenario(groups, schedule);
    benchmark::DoNotOptimize(result.rows.data());
  }
}
BENCHMARK(BM_RunScenario);

void BM_SampleChain(benchmark::State& state) {
  Rng rng(3);
  const std::vector<BetaParams> priors = {BetaParams(0.514, 19.486), BetaParams(0.8, 19.2),
                                          BetaParams(0.6, 19.4)};
  for (auto _ : state) {
    ChainSample sample = sample_chain(priors, rng);
    benchmark::DoNotOptimize(sample.totals.values().data());
  }
}
BENCHMARK(BM_SampleChain);

}  // namespace

BENCHMARK_MAIN();
