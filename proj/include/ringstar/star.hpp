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

// Closed forms for the star graph H = lambda * Z_c * sum_i Z_i + h_c * X_c and
// leading-order early-time OTOC laws.

#pragma once

#include <span>
#include <vector>

#include "ringstar/model.hpp"
#include "ringstar/observables.hpp"
#include "ringstar/pauli.hpp"
#include "ringstar/timeseries.hpp"

namespace ringstar {

struct StarParams {
  int L = 1;
  double lambda = 1.0;
  double h_c = 0.0;

  void validate() const;
  ModelSpec to_spec() const { return ModelSpec::star(L, lambda, h_c); }
};

/// Infinite-temperature <X_i(t) X_i> for a leaf i. The leaves other than i
/// are fixed Z eigenstates during the evolution; with n_up of them up the
/// c-qubit precesses at omega(Z) = sqrt(h_c^2 + lambda^2 Z^2) where
/// Z = 2 n_up - (L - 1) + z_i, and flipping leaf i swaps Z for Z' = Z - 2 z_i:
///
///   2^-L sum_{n_up} C(L-1, n_up) sum_{z_i = +-1}
///       [cos(w t) cos(w' t) + n.n' sin(w t) sin(w' t)],
///   n.n' = (h_c^2 + lambda^2 Z Z') / (w w').
double star_autocorrelation_exact(const StarParams& p, double t);
TimeSeries star_autocorrelation_series(const StarParams& p, std::span<const double> t_grid);

/// 2 sin^2(2 lambda t), the leaf OTOC C_xx(i, i, t) at h_c = 0.
double star_otoc_exact(const StarParams& p, double t);

/// Leading early-time term C(t) ~ coefficient * t^(2 * order) of
/// ||[W(t), V]||_F^2 / (2 * 2^n) from nested commutators of H with W.
struct EarlyTimeLaw {
  int order = 0;
  double coefficient = 0.0;

  double operator()(double t) const;
};

/// Throws NumericalError if W(t) commutes with V up to `max_order`.
EarlyTimeLaw otoc_early_time_law(const PauliSum& h, SitePauli v, SitePauli w, int max_order = 12);
EarlyTimeLaw otoc_early_time_law(const ModelSpec& spec, SitePauli v, SitePauli w, int max_order = 12);

TimeSeries early_time_curve(const EarlyTimeLaw& law, std::span<const double> t_grid);

}  // namespace ringstar
