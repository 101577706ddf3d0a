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
#include <random>
#include <sstream>
#include <vector>

#include "oracles.hpp"
#include "ringstar/error.hpp"
#include "ringstar/spectral.hpp"

using namespace ringstar;

namespace {

// Eigenvalues of GOE matrices: symmetric with Gaussian entries.
std::vector<double> goe_levels(int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> nd;
  Eigen::MatrixXd a(n, n);
  for (auto& x : a.reshaped()) x = nd(rng);
  Eigen::MatrixXd m = (a + a.transpose()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  return {es.eigenvalues().begin(), es.eigenvalues().end()};
}

}  // namespace

TEST_CASE("hand-computed ratios") {
  std::vector<double> e{0.0, 1.0, 3.0};
  auto g = gap_ratios(e, std::nullopt);
  REQUIRE(g.ratios.size() == 1);
  CHECK(g.ratios[0] == doctest::Approx(0.5));
  CHECK(g.mean() == doctest::Approx(0.5));
  std::vector<double> e2{0.0, 1.0, 3.0, 3.5};
  g = gap_ratios(e2, std::nullopt);
  REQUIRE(g.ratios.size() == 2);
  CHECK(g.ratios[1] == doctest::Approx(0.25));
}

TEST_CASE("picket fence gives one") {
  std::vector<double> e;
  for (int k = 0; k < 50; ++k) e.push_back(0.7 * k - 3.0);
  auto g = gap_ratios(e, std::nullopt);
  for (double r : g.ratios) CHECK(r == doctest::Approx(1.0));
}

TEST_CASE("degenerate levels are merged") {
  std::vector<double> e{0.0, 1.0, 1.0 + 1e-13, 3.0};
  auto g = gap_ratios(e, std::nullopt);
  CHECK(g.merged == 1);
  CHECK(g.n_levels == 3);
  REQUIRE(g.ratios.size() == 1);
  CHECK(g.ratios[0] == doctest::Approx(0.5));
}

TEST_CASE("window keeps the middle of the spectrum") {
  std::vector<double> e;
  for (int k = 0; k < 1000; ++k) e.push_back(k * k * 1e-3);
  auto g = gap_ratios(e);
  CHECK(g.n_levels == kDefaultRatioWindow);
  CHECK(g.ratios.size() == kDefaultRatioWindow - 2);
  auto all = gap_ratios(e, std::size_t{5000});
  CHECK(all.n_levels == 1000);
}

TEST_CASE("ratios are invariant under affine maps") {
  auto e = goe_levels(200, 1);
  auto g = gap_ratios(e, std::nullopt);
  std::vector<double> f;
  for (double x : e) f.push_back(3.5 * x - 11.0);
  auto h = gap_ratios(f, std::nullopt);
  REQUIRE(g.ratios.size() == h.ratios.size());
  for (std::size_t i = 0; i < g.ratios.size(); ++i) CHECK(g.ratios[i] == doctest::Approx(h.ratios[i]).epsilon(1e-9));
}

TEST_CASE("poisson statistics") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> e(200000);
  for (auto& x : e) x = u(rng);
  std::sort(e.begin(), e.end());
  CHECK(gap_ratios(e, std::nullopt).mean() == doctest::Approx(2.0 * std::log(2.0) - 1.0).epsilon(0.01));
}

TEST_CASE("goe statistics") {
  double sum = 0.0;
  std::size_t n = 0;
  for (unsigned seed = 0; seed < 20; ++seed) {
    auto g = gap_ratios(goe_levels(400, seed), std::size_t{200});
    for (double r : g.ratios) sum += r;
    n += g.ratios.size();
  }
  CHECK(std::abs(sum / static_cast<double>(n) - 0.5307) < 0.01);
}

TEST_CASE("sector scan produces both parities and a pool") {
  ModelSpec s;
  s.L = 8;
  std::vector<ModelSpec> specs{s};
  auto rows = sector_ratio_scan(specs, std::nullopt);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].sector_parity == 1);
  CHECK(rows[1].sector_parity == -1);
  CHECK(rows[2].sector_parity == 0);
  CHECK(rows[0].n_levels == 60);
  CHECK(rows[2].n_levels == rows[0].n_levels + rows[1].n_levels);
  const double pooled = (rows[0].mean_r * (rows[0].n_levels - 2) + rows[1].mean_r * (rows[1].n_levels - 2)) /
                        static_cast<double>(rows[0].n_levels + rows[1].n_levels - 4);
  CHECK(rows[2].mean_r == doctest::Approx(pooled));
  for (const auto& r : rows) {
    CHECK(r.mean_r > 0.0);
    CHECK(r.mean_r < 1.0);
  }
  std::ostringstream os;
  write_ratio_csv_header(os);
  write_ratio_csv_row(os, rows[2]);
  CHECK(os.str().find(",pooled,") != std::string::npos);
  CHECK(os.str().find(",all,") != std::string::npos);
  DenseLimits tiny;
  tiny.max_spectrum_dim = 10;
  CHECK_THROWS_AS(sector_ratio_scan(specs, std::nullopt, tiny), ResourceError);
  specs[0].boundary = Boundary::Open;
  CHECK_THROWS_AS(sector_ratio_scan(specs), UsageError);
}
