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

#include "doctest.h"

#include <cstdlib>

#include "oracles.hpp"
#include "ringstar/dynamics.hpp"
#include "ringstar/error.hpp"
#include "ringstar/krylov.hpp"

using namespace ringstar;

namespace {

ModelSpec small_model() {
  ModelSpec s;
  s.L = 7;
  s.lambda = 0.6;
  return s;
}

}  // namespace

TEST_CASE("krylov evolution matches the dense propagator") {
  auto s = small_model();
  auto d = oracle::eig(oracle::hamiltonian(s));
  auto psi0 = oracle::random_state(s.n_sites(), 1);
  HamiltonianKernel k(s);
  KrylovPropagator prop(k);
  Eigen::VectorXcd psi = psi0;
  double t = 0.0;
  for (double dt : {0.3, 1.7, 3.0}) {
    prop.evolve(psi, dt);
    t += dt;
    Eigen::VectorXcd ref = oracle::propagator(d, t) * psi0;
    CAPTURE(t);
    CHECK((psi - ref).norm() < 1e-8);
    CHECK(std::abs(psi.norm() - 1.0) < 1e-9);
  }
  CHECK(prop.stats().steps > 0);
  CHECK(prop.stats().error_estimate < 1e-8);
}

TEST_CASE("backward evolution undoes forward evolution") {
  auto s = small_model();
  HamiltonianKernel k(s);
  KrylovPropagator prop(k);
  auto psi0 = oracle::random_state(s.n_sites(), 2);
  Eigen::VectorXcd psi = psi0;
  prop.evolve(psi, 2.5);
  prop.evolve(psi, -2.5);
  CHECK((psi - psi0).norm() < 1e-8);
}

TEST_CASE("small subspaces still converge through step halving") {
  auto s = small_model();
  auto d = oracle::eig(oracle::hamiltonian(s));
  HamiltonianKernel k(s);
  KrylovParams p;
  p.subspace_dim = 6;
  p.dt = 1.0;
  KrylovPropagator prop(k, p);
  auto psi0 = oracle::random_state(s.n_sites(), 3);
  Eigen::VectorXcd psi = psi0;
  prop.evolve(psi, 1.0);
  CHECK(prop.stats().halvings > 0);
  CHECK((psi - oracle::propagator(d, 1.0) * psi0).norm() < 1e-7);
}

TEST_CASE("invariant subspace triggers happy breakdown") {
  // An eigenvector spans a one-dimensional Krylov space.
  auto s = small_model();
  auto d = oracle::eig(oracle::hamiltonian(s));
  HamiltonianKernel k(s);
  KrylovPropagator prop(k);
  Eigen::VectorXcd psi = d.v.col(3);
  prop.evolve(psi, 0.4);
  CHECK(prop.stats().happy_breakdowns > 0);
  Eigen::VectorXcd ref = std::exp(cplx(0.0, -d.e[3] * 0.4)) * d.v.col(3);
  CHECK((psi - ref).norm() < 1e-10);
}

TEST_CASE("invalid krylov parameters") {
  KrylovParams p;
  p.subspace_dim = 1;
  CHECK_THROWS_AS(p.validate(), UsageError);
  p = {};
  p.dt = 0.0;
  CHECK_THROWS_AS(p.validate(), UsageError);
  p = {};
  p.tolerance = -1.0;
  CHECK_THROWS_AS(p.validate(), UsageError);
}

TEST_CASE("spectral propagator matches the oracle") {
  auto s = small_model();
  auto d = oracle::eig(oracle::hamiltonian(s));
  auto sp = SpectralPropagator::for_model(s);
  CHECK((sp.energies() - d.e).cwiseAbs().maxCoeff() < 1e-10);
  auto psi0 = oracle::random_state(s.n_sites(), 4);
  Eigen::VectorXcd psi = psi0;
  sp.evolve(psi, 4.2);
  CHECK((psi - oracle::propagator(d, 4.2) * psi0).norm() < 1e-10);
  Eigen::MatrixXcd x = Eigen::MatrixXcd::Random(sp.dim(), 3);
  CHECK((sp.from_eigenbasis(sp.to_eigenbasis(x)) - x).norm() < 1e-10);
  Eigen::MatrixXd a = Eigen::MatrixXd::Random(sp.dim(), sp.dim());
  CHECK((sp.transform(a) - sp.vectors().transpose() * a * sp.vectors()).norm() < 1e-9);
  CHECK((real_times(a, x) - a.cast<cplx>() * x).norm() < 1e-10);
  CHECK((real_transpose_times(a, x) - a.transpose().cast<cplx>() * x).norm() < 1e-10);
}

TEST_CASE("dense and krylov wrappers agree") {
  auto s = small_model();
  auto psi = state_haar(s.n_sites(), 9);
  auto a = evolve_dense(s, psi, 3.3);
  EvolutionStats st;
  auto b = evolve_krylov(s, psi, 3.3, {}, &st);
  CHECK((a.amplitudes() - b.amplitudes()).norm() < 1e-8);
  CHECK(st.steps >= 66);
}

TEST_CASE("dense cap raises a resource error") {
  ModelSpec s;
  s.L = 12;
  DenseLimits lim;
  CHECK_THROWS_AS(SpectralPropagator::for_model(s, lim), ResourceError);
  lim.max_dense_dim = 128;
  s.L = 6;
  CHECK_NOTHROW(SpectralPropagator::for_model(s, lim));
  s.L = 7;
  CHECK_THROWS_AS(SpectralPropagator::for_model(s, lim), ResourceError);
}
