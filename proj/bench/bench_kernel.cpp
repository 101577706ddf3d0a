// Copyright 2026 The Ringstar Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Serial reference vs OpenMP Hamiltonian application.

#include <benchmark/benchmark.h>

#include <vector>

#include "ringstar/kernel.hpp"
#include "ringstar/krylov.hpp"
#include "ringstar/state.hpp"

namespace {

ringstar::ModelSpec spec_for(int n_sites) {
  ringstar::ModelSpec m;
  m.L = n_sites - 1;
  return m;
}

void BM_ApplySerial(benchmark::State& st) {
  const ringstar::HamiltonianKernel h(spec_for(static_cast<int>(st.range(0))));
  const auto psi = ringstar::state_haar(h.n_sites(), 1);
  std::vector<ringstar::cplx> out(h.dim());
  for (auto _ : st) {
    h.apply_serial(psi.span(), out);
    benchmark::DoNotOptimize(out.data());
  }
  st.SetItemsProcessed(st.iterations() * static_cast<long>(h.dim()));
}

void BM_ApplyParallel(benchmark::State& st) {
  const ringstar::HamiltonianKernel h(spec_for(static_cast<int>(st.range(0))));
  const auto psi = ringstar::state_haar(h.n_sites(), 1);
  std::vector<ringstar::cplx> out(h.dim());
  for (auto _ : st) {
    h.apply(psi.span(), out);
    benchmark::DoNotOptimize(out.data());
  }
  st.SetItemsProcessed(st.iterations() * static_cast<long>(h.dim()));
}

void BM_KrylovStep(benchmark::State& st) {
  const ringstar::HamiltonianKernel h(spec_for(static_cast<int>(st.range(0))));
  ringstar::KrylovPropagator prop(h);
  Eigen::VectorXcd psi = ringstar::state_haar(h.n_sites(), 1).amplitudes();
  for (auto _ : st) {
    prop.evolve(psi, 0.05);
    benchmark::DoNotOptimize(psi.data());
  }
}

}  // namespace

BENCHMARK(BM_ApplySerial)->DenseRange(12, 20, 4);
BENCHMARK(BM_ApplyParallel)->DenseRange(12, 20, 4);
BENCHMARK(BM_KrylovStep)->DenseRange(12, 16, 4);

BENCHMARK_MAIN();
