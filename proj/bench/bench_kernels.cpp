// Serial reference vs OpenMP kernels on the workloads the library runs.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "cloning/kernels.hpp"
#include "cloning/ontic.hpp"
#include "cloning/scan.hpp"

namespace {

using namespace cloning;

std::vector<double> random_vector(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

template <bool Parallel>
void BM_L1(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto x = random_vector(n, 1), y = random_vector(n, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(Parallel ? kernels::parallel::l1(x, y) : kernels::serial::l1(x, y));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long long>(n));
}

template <bool Parallel>
void BM_Pushforward(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto cloner = ontic::saturating_cloner(n, n / 4);
  const auto in = random_vector(static_cast<std::size_t>(n), 3);
  for (auto _ : state) {
    auto out = Parallel ? kernels::parallel::pushforward(cloner.kernel_transposed(), in)
                        : kernels::serial::pushforward(cloner.kernel(), in);
    benchmark::DoNotOptimize(out.data());
  }
}

template <bool Parallel>
void BM_GapProfile(benchmark::State& state) {
  const auto cs = scan::linspace(0.0, 1.0, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto g = Parallel ? scan::parallel::gap_profile(0.015, cs, scan::ErrMode::thm2_direct,
                                                    scan::CMode::observed_confusability)
                      : scan::serial::gap_profile(0.015, cs, scan::ErrMode::thm2_direct,
                                                  scan::CMode::observed_confusability);
    benchmark::DoNotOptimize(g.data());
  }
}

}  // namespace

BENCHMARK(BM_L1<false>)->Name("l1/serial")->Arg(40000)->Arg(1 << 20);
BENCHMARK(BM_L1<true>)->Name("l1/parallel")->Arg(40000)->Arg(1 << 20);
BENCHMARK(BM_Pushforward<false>)->Name("pushforward/serial")->Arg(200)->Arg(1000);
BENCHMARK(BM_Pushforward<true>)->Name("pushforward/parallel")->Arg(200)->Arg(1000);
BENCHMARK(BM_GapProfile<false>)->Name("gap_profile/serial")->Arg(1000)->Arg(100000);
BENCHMARK(BM_GapProfile<true>)->Name("gap_profile/parallel")->Arg(1000)->Arg(100000);

BENCHMARK_MAIN();
