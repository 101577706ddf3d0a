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

// Consecutive level-spacing ratios over symmetry-resolved spectra.

#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "ringstar/linalg.hpp"
#include "ringstar/model.hpp"

namespace ringstar {

inline constexpr std::size_t kDefaultRatioWindow = 100;
inline constexpr double kDegeneracyTolerance = 1e-10;

struct GapRatios {
  std::vector<double> ratios;
  /// Levels after merging and windowing.
  std::size_t n_levels = 0;
  /// Levels merged into a neighbour because their gap was below tolerance.
  std::size_t merged = 0;

  double mean() const;
};

/// r_i = min(s_i, s_{i+1}) / max(s_i, s_{i+1}) over ascending `eigs`. Gaps
/// below kDegeneracyTolerance are merged first; `window` then keeps that many
/// levels centred on the middle of the spectrum (all when nullopt or larger
/// than the spectrum).
GapRatios gap_ratios(std::span<const double> eigs, std::optional<std::size_t> window = kDefaultRatioWindow);

struct RatioReport {
  ModelSpec spec;
  int sector_k = 0;
  /// +1 or -1, or 0 for the pool of both sectors.
  int sector_parity = 0;
  std::size_t n_levels = 0;
  std::optional<std::size_t> window;
  std::size_t merged = 0;
  double mean_r = 0.0;
};

/// Per spec: the k = 0 parity +1 and -1 sectors, then their pooled ratios.
std::vector<RatioReport> sector_ratio_scan(std::span<const ModelSpec> specs,
                                           std::optional<std::size_t> window = kDefaultRatioWindow,
                                           const DenseLimits& limits = DenseLimits::from_env());

/// lambda,J,h,g,h_c,g_c,L,sector_k,sector_parity,n_levels,window,mean_r
void write_ratio_csv_header(std::ostream& os);
void write_ratio_csv_row(std::ostream& os, const RatioReport& r);

}  // namespace ringstar
