#include <benchmark/benchmark.h>

#include <random>

#include "bnf/algebra.hpp"

using namespace bnf;

namespace {

// Dense-ish field with every monomial of degrees lo..hi in one component per index.
template <class C>
VectorField<C> dense_field(int n, int lo, int hi, int trunc, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> num(-5, 5);
  std::uniform_int_distribution<int> comp(0, 2 * n - 1);
  std::vector<FieldTerm<C>> terms;
  for (int d = lo; d <= hi; ++d) {
    for (auto& q : all_indices(n, d)) {
      const int s = comp(rng);
      const int j = s < n ? s - n : s - n + 1;
      C c = Scalar<C>::from_int(num(rng));
      if (Scalar<C>::is_zero(c)) c = Scalar<C>::one();
      terms.push_back({std::move(q), j, c});
    }
  }
  return VectorField<C>(n, trunc, std::move(terms));
}

template <class C>
void bracket_bench(benchmark::State& state, KernelPolicy policy) {
  const int trunc = static_cast<int>(state.range(0));
  const auto x = dense_field<C>(2, 1, trunc, trunc, 1);
  const auto y = dense_field<C>(2, 2, trunc / 2, trunc, 2);
  for (auto _ : state) {
    auto r = policy == KernelPolicy::serial ? bracket_serial(x, y) : bracket_parallel(x, y);
    benchmark::DoNotOptimize(r);
  }
  state.counters["pairs"] = static_cast<double>(x.size() * y.size());
}

template <class C>
void conjugate_bench(benchmark::State& state, KernelPolicy policy) {
  const int trunc = static_cast<int>(state.range(0));
  const auto x = dense_field<C>(2, 1, trunc, trunc, 3);
  const auto u = dense_field<C>(2, 3, 4, trunc, 4);
  for (auto _ : state) {
    auto r = lie_conjugate(x, u, trunc, policy);
    benchmark::DoNotOptimize(r);
  }
}

}  // namespace

void exact_bracket(benchmark::State& s, KernelPolicy p) { bracket_bench<QComplex>(s, p); }
void float_bracket(benchmark::State& s, KernelPolicy p) { bracket_bench<DComplex>(s, p); }
void exact_conjugate(benchmark::State& s, KernelPolicy p) { conjugate_bench<QComplex>(s, p); }
void float_conjugate(benchmark::State& s, KernelPolicy p) { conjugate_bench<DComplex>(s, p); }

BENCHMARK_CAPTURE(exact_bracket, serial, KernelPolicy::serial)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(exact_bracket, parallel, KernelPolicy::parallel)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(float_bracket, serial, KernelPolicy::serial)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(float_bracket, parallel, KernelPolicy::parallel)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(exact_conjugate, serial, KernelPolicy::serial)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(exact_conjugate, parallel, KernelPolicy::parallel)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(float_conjugate, serial, KernelPolicy::serial)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(float_conjugate, parallel, KernelPolicy::parallel)->Arg(10)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
