// Serial reference vs OpenMP kernels.

#include <benchmark/benchmark.h>

#include "gpt/fiducial_frame.hpp"
#include "gpt/kernels.hpp"
#include "gpt/random.hpp"

namespace {

using namespace gpt;

std::vector<CMatrix> densities(int n, int count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<CMatrix> out;
  for (int k = 0; k < count; ++k) out.push_back(random_density(n, rng));
  return out;
}

template <bool Parallel>
void BM_CrossTraces(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto frame = build_canonical_frame(n);
  const auto right = densities(n, frame.size(), 1);
  for (auto _ : state) {
    auto t = Parallel ? kernels::parallel::cross_traces(frame.projectors(), right)
                      : kernels::serial::cross_traces(frame.projectors(), right);
    benchmark::DoNotOptimize(t.real.data());
  }
  state.SetItemsProcessed(state.iterations() * frame.size() * frame.size());
}

template <bool Parallel>
void BM_JointTraces(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto frame = build_canonical_frame(n);
  const CMatrix rho = densities(n * n, 1, 2).front();
  for (auto _ : state) {
    auto t = Parallel ? kernels::parallel::joint_traces(frame.projectors(), frame.projectors(), rho)
                      : kernels::serial::joint_traces(frame.projectors(), frame.projectors(), rho);
    benchmark::DoNotOptimize(t.real.data());
  }
  state.SetItemsProcessed(state.iterations() * frame.size() * frame.size());
}

template <bool Parallel>
void BM_SampleCounts(benchmark::State& state) {
  const std::vector<double> probs{0.1, 0.2, 0.3, 0.15};
  const auto shots = static_cast<std::uint64_t>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    auto c = Parallel ? kernels::parallel::sample_counts(probs, shots, ++seed)
                      : kernels::serial::sample_counts(probs, shots, ++seed);
    benchmark::DoNotOptimize(c.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(shots));
}

}  // namespace

BENCHMARK(BM_CrossTraces<false>)->Arg(4)->Arg(8)->Arg(12);
BENCHMARK(BM_CrossTraces<true>)->Arg(4)->Arg(8)->Arg(12);
BENCHMARK(BM_JointTraces<false>)->Arg(2)->Arg(3)->Arg(4);
BENCHMARK(BM_JointTraces<true>)->Arg(2)->Arg(3)->Arg(4);
BENCHMARK(BM_SampleCounts<false>)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_SampleCounts<true>)->Arg(1 << 16)->Arg(1 << 20);

BENCHMARK_MAIN();
