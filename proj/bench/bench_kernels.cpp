// Serial vs OpenMP kernels. Run with --benchmark_filter=<regex> to pick one.

#include <benchmark/benchmark.h>

#include "flownet/inverse_design.hpp"
#include "flownet/kernels.hpp"
#include "flownet/laplacian.hpp"
#include "flownet/percolation.hpp"
#include "flownet/random_ensembles.hpp"

namespace {

using flownet::Execution;

flownet::WeightedGraph bench_graph(std::size_t n) {
  const double p = std::min(1.0, 8.0 / static_cast<double>(n - 1));
  for (std::uint64_t s = 1;; ++s) {
    auto g = flownet::sample_er({n, flownet::ErModel{p}, flownet::WeightModel::uniform01(), s});
    if (flownet::is_connected(g)) return g;
  }
}

Execution exec_of(const benchmark::State& state) {
  return state.range(1) == 0 ? Execution::serial : Execution::parallel;
}

void BM_ResistanceMatrix(benchmark::State& state) {
  const auto g = bench_graph(static_cast<std::size_t>(state.range(0)));
  const auto bundle = flownet::laplacian_bundle(g);
  for (auto _ : state) {
    auto omega = flownet::effective_resistance(bundle, exec_of(state));
    benchmark::DoNotOptimize(omega.omega.data());
  }
}
BENCHMARK(BM_ResistanceMatrix)->ArgsProduct({{200, 800}, {0, 1}});

void BM_ShermanMorrison(benchmark::State& state) {
  const auto g = bench_graph(static_cast<std::size_t>(state.range(0)));
  const auto bundle = flownet::laplacian_bundle(g);
  const auto& l = g.link(0);
  for (auto _ : state) {
    state.PauseTiming();
    Eigen::MatrixXd pinv = bundle.pseudoinverse;
    state.ResumeTiming();
    benchmark::DoNotOptimize(
        flownet::sherman_morrison_remove(pinv, l.i, l.j, l.weight, exec_of(state)));
  }
}
BENCHMARK(BM_ShermanMorrison)->ArgsProduct({{200, 800}, {0, 1}});

void BM_PruningScore(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto g = bench_graph(n);
  const auto d = flownet::DemandMatrix::from_graph(g);
  Eigen::MatrixXd omega = d.matrix();
  Eigen::MatrixXd w = Eigen::MatrixXd::Constant(omega.rows(), omega.cols(), 0.5);
  Eigen::Matrix<char, Eigen::Dynamic, Eigen::Dynamic> present =
      Eigen::Matrix<char, Eigen::Dynamic, Eigen::Dynamic>::Ones(omega.rows(), omega.cols());
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        flownet::best_pruning_score(d.matrix(), omega, w, present, exec_of(state)));
  }
}
BENCHMARK(BM_PruningScore)->ArgsProduct({{200, 800}, {0, 1}});

void BM_Rgp(benchmark::State& state) {
  const auto g = flownet::sample_tree({static_cast<std::size_t>(state.range(0)),
                                       flownet::TreeModel{},
                                       flownet::WeightModel::integer_uniform(1, 10), 7});
  const auto d = flownet::DemandMatrix::from_graph(g);
  flownet::RgpOptions opt;
  opt.exec = exec_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(flownet::rgp(d, opt).graph.link_count());
}
BENCHMARK(BM_Rgp)->ArgsProduct({{30, 60}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_FlowSweep(benchmark::State& state) {
  for (auto _ : state) {
    auto r = flownet::simulate_flow_fractions(200, 3.0, flownet::WeightModel::identical(), 8, 10,
                                              11, flownet::FlowMethod::automatic, exec_of(state));
    benchmark::DoNotOptimize(r.mean_rho_l());
  }
}
BENCHMARK(BM_FlowSweep)->ArgsProduct({{0}, {0, 1}})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
