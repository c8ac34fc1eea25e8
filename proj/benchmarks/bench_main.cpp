#include <benchmark/benchmark.h>

#include <cmath>

#include "acdc/initial_density.hpp"
#include "acdc/kernels.hpp"
#include "acdc/models.hpp"
#include "acdc/rng.hpp"
#include "acdc/samplers.hpp"
#include "acdc/summaries.hpp"

namespace {

using namespace acdc;

ParamBounds box1(double lo, double hi) {
  ParamBounds b;
  b.lower = Eigen::VectorXd::Constant(1, lo);
  b.upper = Eigen::VectorXd::Constant(1, hi);
  return b;
}

void BM_SimulateCauchy(benchmark::State& state) {
  const auto n = static_cast<int>(state.range(0));
  CauchyModel model(n, CauchyModel::Mode::kLocation, 10.0, 0.55);
  RngStream rng(1);
  ParamVector theta(1);
  theta[0] = 10.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(model.simulate(theta, rng));
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_SimulateCauchy)->Arg(100)->Arg(400)->Arg(1600);

void BM_SimulateRicker(benchmark::State& state) {
  const auto t = static_cast<int>(state.range(0));
  RickerParams fixed{3.8, std::log(0.3), std::log(10.0)};
  RickerModel model(t, 50, {true, false, false}, fixed);
  RngStream rng(2);
  ParamVector theta(1);
  theta[0] = 3.8;
  for (auto _ : state) {
    benchmark::DoNotOptimize(model.simulate(theta, rng));
  }
  state.SetItemsProcessed(state.iterations() * t);
}
BENCHMARK(BM_SimulateRicker)->Arg(50)->Arg(200);

void BM_SummaryCauchyMedianMad(benchmark::State& state) {
  const auto n = static_cast<int>(state.range(0));
  RngStream rng(3);
  Dataset data = simulate_cauchy(n, 10.0, 0.55, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        summary_cauchy(CauchySummaryKind::kMedianMad, data));
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_SummaryCauchyMedianMad)->Arg(400)->Arg(4000);

void BM_SummaryRicker13(benchmark::State& state) {
  const auto t = static_cast<int>(state.range(0));
  RickerParams params{3.8, std::log(0.3), std::log(10.0)};
  RngStream rng(4);
  Dataset data = simulate_ricker(params, t, 50, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(summary_ricker(data));
  }
  state.SetItemsProcessed(state.iterations() * t);
}
BENCHMARK(BM_SummaryRicker13)->Arg(50)->Arg(500);

void BM_KdeLogDensity(benchmark::State& state) {
  const auto k = static_cast<int>(state.range(0));
  RngStream rng(5);
  std::vector<ParamVector> centers;
  centers.reserve(k);
  for (int i = 0; i < k; ++i) {
    ParamVector c(1);
    c[0] = rng.normal();
    centers.push_back(c);
  }
  MinibatchKDE kde = kde_from_centers(std::move(centers));
  ParamVector theta(1);
  theta[0] = 0.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(kde.log_density(theta));
  }
}
BENCHMARK(BM_KdeLogDensity)->Arg(20)->Arg(40)->Arg(160);

void BM_AcdcNormalProposals(benchmark::State& state) {
  // end-to-end proposal loop throughput: n=100 normal model, flat r_n,
  // proportion-based uniform kernel
  const auto n_sims = static_cast<long>(state.range(0));
  NormalMeanModel model(100);
  const SummarySpec spec = summary_spec("mean");
  FlatInitial rn(1, box1(-2.0, 2.0));
  KernelSpec kernel{KernelKind::kUniform, 1.0, {0.1}};
  SamplerRunOptions opt;
  opt.proportion = 0.05;
  SummaryVector s_obs(1);
  s_obs[0] = 0.1;
  long key = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_acdc(model, spec, rn, kernel, n_sims, s_obs,
                                      RngStream(static_cast<std::uint64_t>(
                                          ++key)),
                                      opt));
  }
  state.SetItemsProcessed(state.iterations() * n_sims);
}
BENCHMARK(BM_AcdcNormalProposals)->Arg(2000)->Arg(10000);

}  // namespace

BENCHMARK_MAIN();
