#include <benchmark/benchmark.h>

#include "banmin/l1_oracle.hpp"
#include "banmin/mni.hpp"
#include "banmin/prox.hpp"
#include "banmin/verify.hpp"

using namespace banmin;

namespace {

RandomInstance fixed_instance(std::uint64_t seed) {
  Rng rng(seed);
  return random_instance(rng);
}

void BM_MniL1(benchmark::State& state) {
  RandomInstance inst = fixed_instance(static_cast<std::uint64_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(solve_mni_l1(inst.op, inst.y));
}
BENCHMARK(BM_MniL1)->Arg(1)->Arg(2)->Arg(3);

void BM_BasisPursuitLP(benchmark::State& state) {
  RandomInstance inst = fixed_instance(static_cast<std::uint64_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(basis_pursuit(inst.op, inst.y));
}
BENCHMARK(BM_BasisPursuitLP)->Arg(1)->Arg(2)->Arg(3);

void BM_MniHilbert(benchmark::State& state) {
  RandomInstance inst = fixed_instance(static_cast<std::uint64_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(solve_mni_hilbert(inst.op, inst.y));
}
BENCHMARK(BM_MniHilbert)->Arg(1)->Arg(2);

void BM_MniLp(benchmark::State& state) {
  RandomInstance inst = fixed_instance(static_cast<std::uint64_t>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(solve_mni_lp_space(inst.op, inst.y, 3.0));
}
BENCHMARK(BM_MniLp)->Arg(1)->Arg(2);

void BM_SoftThreshold(benchmark::State& state) {
  Rng rng(9);
  std::vector<SparseSeq::Entry> entries;
  for (Index j = 0; j < 1000; ++j) entries.emplace_back(j, rng.normal());
  SparseSeq x = SparseSeq::from_pairs(std::move(entries));
  for (auto _ : state) benchmark::DoNotOptimize(soft_threshold(x, 0.5));
}
BENCHMARK(BM_SoftThreshold);

}  // namespace

BENCHMARK_MAIN();
