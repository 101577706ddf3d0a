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

#include "oracles.hpp"
#include "ringstar/error.hpp"
#include "ringstar/model.hpp"
#include "ringstar/pauli.hpp"

using namespace ringstar;

namespace {

double max_diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("hamiltonian matches term-by-term construction") {
  for (int L : {1, 2, 3, 4, 5}) {
    for (auto axis : {CouplingAxis::Z, CouplingAxis::X}) {
      for (auto bc : {Boundary::Periodic, Boundary::Open}) {
        ModelSpec s;
        s.L = L;
        s.lambda = 0.7;
        s.J = 1.3;
        s.h = -0.4;
        s.g = 0.25;
        s.h_c = 2.1;
        s.g_c = -0.6;
        s.axis = axis;
        s.boundary = bc;
        CAPTURE(L);
        CHECK(max_diff(to_dense(build_pauli_sum(s)), oracle::hamiltonian(s)) < 1e-13);
      }
    }
  }
}

TEST_CASE("ring bonds at small L") {
  ModelSpec s;
  s.L = 1;
  CHECK(ring_bonds(s).empty());
  s.L = 2;
  CHECK(ring_bonds(s).size() == 2);
  s.boundary = Boundary::Open;
  CHECK(ring_bonds(s).size() == 1);
  s.L = 5;
  CHECK(ring_bonds(s).size() == 4);
  s.boundary = Boundary::Periodic;
  CHECK(ring_bonds(s).size() == 5);
}

TEST_CASE("L = 2 periodic doubles the bond") {
  ModelSpec s = ModelSpec::pure_star(2, 0.0);
  s.J = 1.0;
  auto p = build_pauli_sum(s);
  CHECK(p.coefficient("ZZI") == cplx(-2.0, 0.0));
}

TEST_CASE("presets") {
  auto s = ModelSpec::pure_star(6, 0.8);
  CHECK(s.J == 0.0);
  CHECK(s.h == 0.0);
  CHECK(s.g == 0.0);
  CHECK(s.h_c == 0.0);
  CHECK(s.g_c == 0.0);
  CHECK(build_pauli_sum(s).size() == 6);
  auto t = ModelSpec::star(6, 0.8, 1.5);
  CHECK(t.h_c == 1.5);
  CHECK(build_pauli_sum(t).size() == 7);
}

TEST_CASE("default parameters") {
  ModelSpec s;
  CHECK(s.L == 11);
  CHECK(s.lambda == 1.0);
  CHECK(s.J == 1.0);
  CHECK(s.h == 1.05);
  CHECK(s.h_c == 1.05);
  CHECK(s.g == 0.45);
  CHECK(s.g_c == 0.45);
  CHECK(s.dim() == 4096);
}

TEST_CASE("validation") {
  ModelSpec s;
  s.L = 0;
  CHECK_THROWS_AS(s.validate(), UsageError);
  s.L = 64;
  CHECK_THROWS_AS(s.validate(), UsageError);
  s.L = 63;
  CHECK_NOTHROW(s.validate());
  s.lambda = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(s.validate(), UsageError);
}

TEST_CASE("config round trip") {
  ModelSpec s;
  s.L = 7;
  s.lambda = 0.1 + 0.2;
  s.h_c = 1.0 / 3.0;
  s.axis = CouplingAxis::X;
  s.boundary = Boundary::Open;
  auto back = model_from_config(to_config(s));
  CHECK(back == s);
  ModelSpec u;
  CHECK(set_model_field(u, "lambda", "2.5"));
  CHECK(u.lambda == 2.5);
  CHECK_FALSE(set_model_field(u, "nonsense", "1"));
}
