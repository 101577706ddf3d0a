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

#include <vector>

#include "oracles.hpp"
#include "ringstar/error.hpp"
#include "ringstar/kernel.hpp"
#include "ringstar/model.hpp"
#include "ringstar/state.hpp"

using namespace ringstar;

TEST_CASE("dense kernel equals oracle") {
  for (int L : {2, 3, 5, 6}) {
    for (auto axis : {CouplingAxis::Z, CouplingAxis::X}) {
      ModelSpec s;
      s.L = L;
      s.lambda = 0.9;
      s.axis = axis;
      HamiltonianKernel k(s);
      CHECK(k.is_real());
      CHECK((k.dense() - oracle::hamiltonian(s)).cwiseAbs().maxCoeff() < 1e-13);
      CHECK((k.dense_real().cast<cplx>() - oracle::hamiltonian(s)).cwiseAbs().maxCoeff() < 1e-13);
    }
  }
}

TEST_CASE("apply matches dense product and serial reference bit for bit") {
  ModelSpec s;
  s.L = 9;
  HamiltonianKernel k(s);
  auto psi = oracle::random_state(s.n_sites(), 7);
  Eigen::VectorXcd a(psi.size()), b(psi.size());
  k.apply(std::span<const cplx>(psi.data(), k.dim()), std::span<cplx>(a.data(), k.dim()));
  k.apply_serial(std::span<const cplx>(psi.data(), k.dim()), std::span<cplx>(b.data(), k.dim()));
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    REQUIRE(a[i].real() == b[i].real());
    REQUIRE(a[i].imag() == b[i].imag());
  }
  Eigen::VectorXcd ref = oracle::hamiltonian(s) * psi;
  CHECK((a - ref).norm() < 1e-12);
}

TEST_CASE("complex operators") {
  PauliSum op(3);
  op.add(PauliString::from_label("YZI"), 0.5);
  op.add(PauliString::from_label("XIY"), cplx(0.0, 0.3));
  op.add(PauliString::from_label("IZZ"), -1.0);
  HamiltonianKernel k(op);
  CHECK_FALSE(k.is_real());
  CHECK_THROWS_AS(k.dense_real(), UsageError);
  Eigen::MatrixXcd ref = 0.5 * oracle::string_matrix("YZI") + cplx(0.0, 0.3) * oracle::string_matrix("XIY") -
                         oracle::string_matrix("IZZ");
  CHECK((k.dense() - ref).cwiseAbs().maxCoeff() < 1e-14);
  auto psi = oracle::random_state(3, 3);
  CHECK((k.apply(psi) - ref * psi).norm() < 1e-14);
}

TEST_CASE("column iteration reproduces the dense matrix") {
  ModelSpec s;
  s.L = 4;
  HamiltonianKernel k(s);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(k.dim()), static_cast<Eigen::Index>(k.dim()));
  for (std::uint64_t c = 0; c < k.dim(); ++c) {
    k.for_each_in_column(c, [&](std::uint64_t r, cplx v) { m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) += v; });
  }
  CHECK((m - oracle::hamiltonian(s)).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("span size mismatch is rejected") {
  ModelSpec s;
  s.L = 3;
  HamiltonianKernel k(s);
  std::vector<cplx> in(16), out(8);
  CHECK_THROWS_AS(k.apply(in, out), UsageError);
}

TEST_CASE("single-site Pauli application") {
  auto psi = oracle::random_state(4, 11);
  for (char c : {'X', 'Y', 'Z'}) {
    for (int site = 0; site < 4; ++site) {
      Eigen::VectorXcd v = psi;
      apply_pauli(v, site, pauli_from_char(c));
      CHECK((v - oracle::site_op(4, site, c) * psi).norm() < 1e-14);
    }
  }
}

TEST_CASE("initial states") {
  auto y = state_plus_y(3);
  Eigen::VectorXcd one(2);
  one << 1.0, cplx(0.0, 1.0);
  one /= std::sqrt(2.0);
  Eigen::VectorXcd ref = oracle::kron(oracle::kron(one, one), one);
  CHECK((y.amplitudes() - ref).norm() < 1e-14);
  auto a = state_haar(5, 42), b = state_haar(5, 42), c = state_haar(5, 43);
  CHECK(a.amplitudes() == b.amplitudes());
  CHECK((a.amplitudes() - c.amplitudes()).norm() > 0.1);
  CHECK(std::abs(a.norm() - 1.0) < 1e-14);
}

TEST_CASE("seed derivation is deterministic and spreads") {
  CHECK(derive_seed(1, 0) == derive_seed(1, 0));
  CHECK(derive_seed(1, 0) != derive_seed(1, 1));
  CHECK(derive_seed(1, 0) != derive_seed(2, 0));
}

TEST_CASE("checkpoint round trip") {
  auto psi = state_haar(6, 5);
  auto path = std::filesystem::temp_directory_path() / "ringstar_ckpt_test.bin";
  write_checkpoint(path, psi);
  auto back = read_checkpoint(path);
  CHECK(back.n_sites() == 6);
  CHECK(back.amplitudes() == psi.amplitudes());
  std::filesystem::remove(path);
}
