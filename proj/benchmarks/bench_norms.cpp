// Copyright 2026 The gnorm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <random>

#include "gnorm/decision.hpp"
#include "gnorm/norms.hpp"

namespace {

using namespace gnorm;

HermitianMatrix random_hermitian(int d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n;
  CMatrix g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = Complex(n(rng), n(rng));
  return HermitianMatrix(CMatrix(g + g.adjoint()));
}

void BM_TraceNormStates(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const Section s = states_section(d);
  const HermitianMatrix x = random_hermitian(d, 1);
  for (auto _ : state) benchmark::DoNotOptimize(base_norm(s, x).value);
}
BENCHMARK(BM_TraceNormStates)->Arg(2)->Arg(4)->Arg(8);

void BM_ChannelsSection(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(channels_section(d, d).span_dimension());
}
BENCHMARK(BM_ChannelsSection)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_DiamondNorm(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const HermitianMatrix x = random_hermitian(d * d, 2).with_subsystem_dims({d, d});
  for (auto _ : state) benchmark::DoNotOptimize(diamond_norm(ChoiMatrix(x)).value);
}
BENCHMARK(BM_DiamondNorm)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_CombNorm(benchmark::State& state) {
  const HermitianMatrix x = random_hermitian(16, 3);
  for (auto _ : state) benchmark::DoNotOptimize(ncomb_norm({2, 2, 2, 2}, x).value);
}
BENCHMARK(BM_CombNorm)->Unit(benchmark::kMillisecond)->Iterations(3);

void BM_MinEntropy(benchmark::State& state) {
  const HermitianMatrix y = random_hermitian(4, 4);
  const HermitianMatrix sigma(CMatrix(y.matrix() * y.matrix() / (y.matrix() * y.matrix()).trace().real()));
  for (auto _ : state) benchmark::DoNotOptimize(hmin(sigma, 2, 2).value);
}
BENCHMARK(BM_MinEntropy)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
