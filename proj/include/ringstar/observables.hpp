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

// Entanglement entropy, OTOCs, two-time correlators and time averages.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ringstar/krylov.hpp"
#include "ringstar/linalg.hpp"
#include "ringstar/model.hpp"
#include "ringstar/pauli.hpp"
#include "ringstar/state.hpp"
#include "ringstar/timeseries.hpp"

namespace ringstar {

struct Bipartition {
  std::vector<int> ring_sites_a;
  bool cqubit_in_a = false;

  /// Ring sites 0 .. ceil(L/2)-1 in A, c-qubit in B.
  static Bipartition half_chain(int L);

  /// Bit mask of A over the L + 1 sites. Throws UsageError unless A is a
  /// nonempty proper subset of valid sites.
  std::uint64_t mask_a(int L) const;
};

/// Von Neumann entropy in nats from the Schmidt spectrum across `part`.
double entanglement_entropy(const StateVector& psi, const Bipartition& part);

/// Haar-average entropy of a dim_a x dim_b bipartition.
double page_value(std::size_t dim_a, std::size_t dim_b);

struct SitePauli {
  int site = 0;
  Pauli axis = Pauli::X;
};

enum class OtocMethod { Automatic, Krylov, Spectral };

struct DynamicsOptions {
  KrylovParams krylov;
  DenseLimits limits = DenseLimits::from_env();
  /// Automatic uses the eigenbasis for dimensions up to 1024, Krylov above.
  OtocMethod method = OtocMethod::Automatic;
};

/// C(t) = 1 - Re<psi| W(t) V W(t) V |psi>, evaluated as ||[W(t), V] psi||^2 / 2.
/// The Krylov route steps U(t) psi and U(t) V psi forward across the grid and
/// evolves W U(t) x back to time zero at each point.
TimeSeries otoc(const ModelSpec& spec, const StateVector& psi0, SitePauli v, SitePauli w,
                std::span<const double> t_grid, const DynamicsOptions& opts = {});

/// One series per W, sharing the forward evolution.
std::vector<TimeSeries> otoc_multi(const ModelSpec& spec, const StateVector& psi0, SitePauli v,
                                   std::span<const SitePauli> ws, std::span<const double> t_grid,
                                   const DynamicsOptions& opts = {});

/// 1 Haar state for L + 1 >= 12, 20 below.
int default_haar_samples(int n_sites);

/// Average of otoc over Haar states seeded by derive_seed(seed, k).
TimeSeries otoc_haar(const ModelSpec& spec, SitePauli v, SitePauli w, std::span<const double> t_grid,
                     int samples, std::uint64_t seed, const DynamicsOptions& opts = {});

/// ||[W(t), V]||_F^2 / (2 * 2^(L+1)) from the full eigendecomposition.
TimeSeries otoc_exact_trace(const ModelSpec& spec, SitePauli v, SitePauli w,
                            std::span<const double> t_grid, const DenseLimits& limits = DenseLimits::from_env());

enum class TraceMode { HaarTypicality, ExactTrace };

/// <sigma_i(t) sigma_i>: Re<psi| sigma(t) sigma |psi> averaged over Haar
/// states, or 2^-(L+1) Tr[sigma(t) sigma].
TimeSeries two_time_autocorrelation(const ModelSpec& spec, SitePauli op, std::span<const double> t_grid,
                                    TraceMode mode, int samples = 0, std::uint64_t seed = 0,
                                    const DynamicsOptions& opts = {});

/// (1/(t0 - t_first)) * integral of |value| from the first time to t0, by
/// the trapezoid rule with linear interpolation at t0.
double long_time_average(const TimeSeries& s, double t0);

struct InitialState {
  enum class Kind { PlusY, Haar };
  Kind kind = Kind::PlusY;
  std::uint64_t seed = 0;
};

StateVector make_initial_state(int n_sites, const InitialState& init);

/// S_vN(t) along a Krylov trajectory started at t = 0.
TimeSeries quench_entropy_trajectory(const ModelSpec& spec, const InitialState& init,
                                     const Bipartition& part, std::span<const double> t_grid,
                                     const KrylovParams& krylov = {});

}  // namespace ringstar
