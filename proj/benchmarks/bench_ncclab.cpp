#include <benchmark/benchmark.h>

#include <memory>
#include <random>
#include <vector>

#include "ncclab/field.hpp"
#include "ncclab/flow.hpp"
#include "ncclab/reduction.hpp"

namespace {

std::vector<ncclab::FieldElement> random_coeffs(const ncclab::PrimeField& f, std::size_t n) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::uint32_t> d(0, f.modulus() - 1);
  std::vector<std::uint32_t> raw(n);
  for (auto& v : raw) v = d(rng);
  return ncclab::to_elements(f, raw);
}

// GF(65537) has roots of unity of every power-of-two order up to 2^16.
void BM_ffft(benchmark::State& state) {
  const ncclab::PrimeField f(65537);
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto root = ncclab::find_root_of_unity(f, n);
  const auto a = random_coeffs(f, n);
  for (auto _ : state) benchmark::DoNotOptimize(ncclab::ffft(a, root));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ffft)->RangeMultiplier(4)->Range(16, 4096)->Complexity(benchmark::oNLogN);

void BM_naive_dft(benchmark::State& state) {
  const ncclab::PrimeField f(65537);
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto root = ncclab::find_root_of_unity(f, n);
  const auto a = random_coeffs(f, n);
  for (auto _ : state) benchmark::DoNotOptimize(ncclab::naive_dft(a, root));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_naive_dft)->RangeMultiplier(4)->Range(16, 1024)->Complexity(benchmark::oNSquared);

// flow LP on the pruned reduction network of inv_block(n, 2)
void BM_flow_rate_reduction(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto scheme = ncclab::TwoPassScheme::inversion(
      std::shared_ptr<const ncclab::SystematicDS>(ncclab::make_inv_block(n, 2)));
  auto pruned = ncclab::prune_high_degree(scheme.layered_graph(), 8);
  ncclab::choose_shift(pruned, 1);
  const auto net = ncclab::undirect(pruned.network());
  for (auto _ : state) benchmark::DoNotOptimize(ncclab::flow_rate(net).rate);
}
BENCHMARK(BM_flow_rate_reduction)->Arg(4)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

// census and bucket selection over all n! permutations
void BM_bucket_census(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto scheme = ncclab::TwoPassScheme::inversion(
      std::shared_ptr<const ncclab::SystematicDS>(ncclab::make_inv_block(n, 2)));
  auto pruned = ncclab::prune_high_degree(scheme.layered_graph(), 4);
  scheme.set_shift(ncclab::choose_shift(pruned, 1));
  bool exhaustive = false;
  const auto inputs = ncclab::census_inputs(scheme, 100000, 1, exhaustive);
  for (auto _ : state) benchmark::DoNotOptimize(ncclab::select_bucket(pruned, scheme, inputs).members.size());
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * inputs.size()));
}
BENCHMARK(BM_bucket_census)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
