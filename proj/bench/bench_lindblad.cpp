// Copyright 2026 The ccabic Authors
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
#include <omp.h>

#include "ccabic/density.hpp"
#include "ccabic/dynamics.hpp"
#include "ccabic/lindblad.hpp"

namespace {

struct Fixture {
  ccabic::ModelParams p;
  ccabic::DensityMatrix rho;
  ccabic::DensityMatrix out;
  std::unique_ptr<ccabic::LindbladGenerator> gen;

  Fixture(int n_chain, int m_atoms, int k) {
    p.n_chain = n_chain;
    p.m_atoms = m_atoms;
    p.g = 0.1;
    p.gamma_c = 1.0;
    p.gamma_a = 0.01;
    const auto sectors = ccabic::make_sectors(p, k);
    gen = std::make_unique<ccabic::LindbladGenerator>(p, sectors, ccabic::LindbladOptions{true, true});
    rho = ccabic::DensityMatrix::pure(sectors, ccabic::atomic_product_state(p, k, 0));
    for (int s = 0; s <= k; ++s) rho.block(s).diagonal().array() += 1.0 / rho.total_dim();
    out = ccabic::DensityMatrix(sectors);
  }
};

void BM_Kernel(benchmark::State& state) {
  Fixture f(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)),
            static_cast<int>(state.range(2)));
  omp_set_num_threads(static_cast<int>(state.range(3)));
  for (auto _ : state) {
    f.gen->apply(f.rho, f.out);
    benchmark::DoNotOptimize(f.out.flat().data());
  }
  state.counters["dim"] = static_cast<double>(f.rho.total_dim());
}

void BM_Reference(benchmark::State& state) {
  Fixture f(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)),
            static_cast<int>(state.range(2)));
  for (auto _ : state) {
    f.gen->apply_reference(f.rho, f.out);
    benchmark::DoNotOptimize(f.out.flat().data());
  }
  state.counters["dim"] = static_cast<double>(f.rho.total_dim());
}

void KernelArgs(benchmark::internal::Benchmark* b) {
  const int max_threads = omp_get_max_threads();
  for (const auto& [n, m, k] : {std::tuple{2, 2, 2}, std::tuple{3, 3, 3}, std::tuple{4, 3, 3}}) {
    for (int t = 1; t <= max_threads; t *= 2) b->Args({n, m, k, t});
  }
}

}  // namespace

BENCHMARK(BM_Kernel)->Apply(KernelArgs)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Reference)->Args({2, 2, 2})->Args({3, 3, 3})->Args({4, 3, 3})->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
