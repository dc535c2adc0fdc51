#include <benchmark/benchmark.h>

#include "repkit/kernels.hpp"
#include "repkit/operators.hpp"
#include "repkit/order.hpp"
#include "repkit/rng.hpp"
#include "repkit/tensor.hpp"

using namespace repkit;

namespace {

Kernel make_kernel(int atoms, int dim) {
  Rng rng(7);
  std::vector<std::string> names1, names2;
  for (int i = 0; i < atoms; ++i) {
    names1.push_back("a" + std::to_string(i));
    names2.push_back("b" + std::to_string(i));
  }
  MeasureSpace s1(names1, Eigen::VectorXd::Ones(atoms) * 0.5);
  MeasureSpace s2(names2, Eigen::VectorXd::Ones(atoms) * 1.5);
  SpaceSpec e{dim, PNorm::P1, false};
  SpaceSpec f{dim, PNorm::PInf, false};
  return Kernel(s1, s2, e, f, rng.gaussian_matrix(dim * atoms, dim * atoms));
}

void BM_OperatorNorm(benchmark::State& state) {
  Kernel k = make_kernel(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  BlockOperator t = kernel_to_operator(k);
  for (auto _ : state) benchmark::DoNotOptimize(operator_norm(t).value);
}
BENCHMARK(BM_OperatorNorm)->Args({4, 2})->Args({8, 4})->Args({16, 4});

void BM_KernelSupNorm(benchmark::State& state) {
  Kernel k = make_kernel(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(kernel_sup_norm(k).value());
}
BENCHMARK(BM_KernelSupNorm)->Args({4, 2})->Args({8, 4})->Args({16, 4});

void BM_SpectralNorm(benchmark::State& state) {
  Rng rng(11);
  Eigen::MatrixXd m = rng.gaussian_matrix(static_cast<int>(state.range(0)),
                                          static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(spectral_norm(m).value);
}
BENCHMARK(BM_SpectralNorm)->Arg(8)->Arg(32)->Arg(128);

void BM_PiNormBounds(benchmark::State& state) {
  Rng rng(13);
  int n = static_cast<int>(state.range(0));
  TensorFactor f0 = TensorFactor::space({n, PNorm::PInf, false});
  TensorFactor f1 = TensorFactor::space({n, PNorm::PInf, false});
  TensorElement z({f0, f1}, rng.gaussian_vector(n * n));
  for (auto _ : state)
    benchmark::DoNotOptimize(pi_norm_bounds(z, 42, static_cast<int>(state.range(1))).upper);
}
BENCHMARK(BM_PiNormBounds)->Args({3, 50})->Args({4, 200});

void BM_Counterexample(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(counterexample_sequence(static_cast<int>(state.range(0))).size());
}
BENCHMARK(BM_Counterexample)->Arg(64)->Arg(256);

}  // namespace

BENCHMARK_MAIN();
