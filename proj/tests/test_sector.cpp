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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "oracles.hpp"
#include "ringstar/error.hpp"
#include "ringstar/linalg.hpp"
#include "ringstar/sector.hpp"

using namespace ringstar;

namespace {

// Number of bracelets (necklaces up to rotation and reflection) of length n in
// two colours, by Burnside's lemma over the dihedral group.
std::size_t bracelets(int n) {
  auto phi = [](int m) {
    int r = m;
    for (int p = 2; p * p <= m; ++p) {
      if (m % p == 0) {
        while (m % p == 0) m /= p;
        r -= r / p;
      }
    }
    if (m > 1) r -= r / m;
    return r;
  };
  std::size_t rot = 0;
  for (int d = 1; d <= n; ++d) {
    if (n % d == 0) rot += static_cast<std::size_t>(phi(n / d)) << d;
  }
  std::size_t refl = n % 2 ? static_cast<std::size_t>(n) << ((n + 1) / 2)
                           : static_cast<std::size_t>(n / 2) * ((std::size_t{1} << (n / 2 + 1)) + (std::size_t{1} << (n / 2)));
  return (rot + refl) / (2 * static_cast<std::size_t>(n));
}

bool contains(const Eigen::VectorXd& big, double x, double tol) {
  for (double e : big) {
    if (std::abs(e - x) < tol) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("orbit helpers") {
  CHECK(translate(0b0001, 4) == 0b0010);
  CHECK(translate(0b1000, 4) == 0b0001);
  CHECK(reflect(0b0010, 4) == 0b1000);
  CHECK(reflect(0b0001, 4) == 0b0001);
  CHECK(orbit_minimum(0b1100, 4) == 0b0011);
  CHECK(orbit_minimum(0b1010, 4) == 0b0101);
}

TEST_CASE("even sector counts bracelets") {
  CHECK(bracelets(8) == 30);
  for (int L = 1; L <= 12; ++L) {
    CAPTURE(L);
    auto b = build_sector_basis(L, +1);
    CHECK(b.ring_dimension() == bracelets(L));
    CHECK(b.dimension() == 2 * bracelets(L));
  }
}

TEST_CASE("sector dimensions add up to the k = 0 space") {
  for (int L = 2; L <= 12; ++L) {
    auto e = build_sector_basis(L, +1);
    auto o = build_sector_basis(L, -1);
    // Number of translation orbits equals the k = 0 dimension.
    std::vector<std::uint64_t> reps;
    for (std::uint64_t c = 0; c < (std::uint64_t{1} << L); ++c) reps.push_back(orbit_minimum(c, L));
    std::sort(reps.begin(), reps.end());
    reps.erase(std::unique(reps.begin(), reps.end()), reps.end());
    CAPTURE(L);
    CHECK(e.ring_dimension() + o.ring_dimension() == reps.size());
  }
}

TEST_CASE("embedding is an isometry onto symmetric states") {
  const int L = 6;
  for (int p : {+1, -1}) {
    auto b = build_sector_basis(L, p);
    Eigen::MatrixXd v = b.ring_embedding();
    Eigen::MatrixXd g = v.transpose() * v;
    CHECK((g - Eigen::MatrixXd::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff() < 1e-13);
    for (Eigen::Index j = 0; j < v.cols(); ++j) {
      for (std::uint64_t c = 0; c < (std::uint64_t{1} << L); ++c) {
        const double a = v(static_cast<Eigen::Index>(c), j);
        REQUIRE(std::abs(a - v(static_cast<Eigen::Index>(translate(c, L)), j)) < 1e-13);
        REQUIRE(std::abs(p * a - v(static_cast<Eigen::Index>(reflect(c, L)), j)) < 1e-13);
      }
    }
  }
}

TEST_CASE("sector block equals projected full hamiltonian") {
  ModelSpec s;
  s.L = 6;
  s.lambda = 0.8;
  Eigen::MatrixXd full = oracle::hamiltonian(s).real();
  for (int p : {+1, -1}) {
    auto b = build_sector_basis(s.L, p);
    Eigen::MatrixXd ring = b.ring_embedding();
    // Index 2 * ring_state + c_bit; the c-qubit is the most significant bit.
    Eigen::MatrixXd emb = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(s.dim()), static_cast<Eigen::Index>(b.dimension()));
    for (Eigen::Index r = 0; r < ring.cols(); ++r) {
      for (int c = 0; c < 2; ++c) emb.block(c * ring.rows(), 2 * r + c, ring.rows(), 1) = ring.col(r);
    }
    Eigen::MatrixXd ref = emb.transpose() * full * emb;
    Eigen::MatrixXd got = sector_hamiltonian(s, b);
    CHECK((got - ref).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((got - got.transpose()).cwiseAbs().maxCoeff() < 1e-14);
  }
}

TEST_CASE("sector spectrum is contained in the full spectrum") {
  ModelSpec s;
  s.L = 7;
  auto full = oracle::eig(oracle::hamiltonian(s)).e;
  for (int p : {+1, -1}) {
    auto sec = full_spectrum(sector_hamiltonian(s, build_sector_basis(s.L, p)));
    for (double e : sec) CHECK(contains(full, e, 1e-9));
  }
}

TEST_CASE("decoupled transverse-field ring matches free fermions") {
  // lambda = g = 0: the ring is a periodic transverse-field Ising chain. Its
  // ground state lies in k = 0, reflection-even, and its energy is the
  // Neveu-Schwarz free-fermion sum over half-integer momenta.
  ModelSpec s;
  s.L = 8;
  s.lambda = 0.0;
  s.g = 0.0;
  s.g_c = 0.0;
  s.h_c = 0.5;
  s.J = 1.0;
  s.h = 0.7;
  double e0 = 0.0;
  for (int m = 0; m < s.L; ++m) {
    const double k = 2.0 * std::numbers::pi * (m + 0.5) / s.L;
    e0 -= std::sqrt(s.J * s.J + s.h * s.h - 2.0 * s.J * s.h * std::cos(k));
  }
  e0 -= s.h_c;
  auto sec = full_spectrum(sector_hamiltonian(s, build_sector_basis(s.L, +1)));
  CHECK(sec.minCoeff() == doctest::Approx(e0).epsilon(1e-10));
}

TEST_CASE("invalid sector requests") {
  CHECK_THROWS_AS(build_sector_basis(6, 0), UsageError);
  CHECK_THROWS_AS(build_sector_basis(6, 1, Boundary::Open), UsageError);
  CHECK_THROWS_AS(build_sector_basis(0, 1), UsageError);
  CHECK_THROWS_AS(build_sector_basis(25, 1), UsageError);
}
