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

#include "ringstar/spectral.hpp"

#include <algorithm>
#include <ostream>

#include "ringstar/error.hpp"
#include "ringstar/numfmt.hpp"
#include "ringstar/sector.hpp"

namespace ringstar {

double GapRatios::mean() const {
  if (ratios.empty()) throw UsageError("no gap ratios");
  double s = 0.0;
  for (double r : ratios) s += r;
  return s / static_cast<double>(ratios.size());
}

GapRatios gap_ratios(std::span<const double> eigs, std::optional<std::size_t> window) {
  if (eigs.size() < 3) throw UsageError("gap ratios need at least 3 levels");
  GapRatios out;
  std::vector<double> levels{eigs.front()};
  for (std::size_t k = 1; k < eigs.size(); ++k) {
    if (!(eigs[k] >= eigs[k - 1])) throw UsageError("eigenvalues must be ascending");
    if (eigs[k] - levels.back() < kDegeneracyTolerance) {
      ++out.merged;
    } else {
      levels.push_back(eigs[k]);
    }
  }
  if (levels.size() == 1) throw NumericalError("spectrum is fully degenerate");
  if (levels.size() < 3) throw UsageError("fewer than 3 distinct levels");
  std::size_t begin = 0, count = levels.size();
  if (window) {
    if (*window < 3) throw UsageError("ratio window must hold at least 3 levels");
    if (*window < count) {
      begin = (count - *window) / 2;
      count = *window;
    }
  }
  out.n_levels = count;
  for (std::size_t k = begin + 1; k + 1 < begin + count; ++k) {
    const double s0 = levels[k] - levels[k - 1];
    const double s1 = levels[k + 1] - levels[k];
    out.ratios.push_back(std::min(s0, s1) / std::max(s0, s1));
  }
  return out;
}

std::vector<RatioReport> sector_ratio_scan(std::span<const ModelSpec> specs, std::optional<std::size_t> window,
                                           const DenseLimits& limits) {
  std::vector<RatioReport> out;
  for (const auto& spec : specs) {
    spec.validate();
    if (spec.boundary != Boundary::Periodic) throw UsageError("sector scan needs a periodic ring");
    std::vector<double> pooled;
    std::size_t pooled_levels = 0, pooled_merged = 0;
    for (int parity : {1, -1}) {
      const SectorBasis basis = build_sector_basis(spec.L, parity, spec.boundary);
      if (basis.dimension() > limits.max_spectrum_dim) {
        throw ResourceError("sector dimension " + std::to_string(basis.dimension()) + " exceeds the spectrum cap");
      }
      if (basis.dimension() < 3) continue;
      const Eigen::VectorXd e = full_spectrum(sector_hamiltonian(spec, basis), limits);
      const GapRatios g = gap_ratios(std::span<const double>(e.data(), static_cast<std::size_t>(e.size())), window);
      out.push_back({spec, 0, parity, g.n_levels, window, g.merged, g.mean()});
      pooled.insert(pooled.end(), g.ratios.begin(), g.ratios.end());
      pooled_levels += g.n_levels;
      pooled_merged += g.merged;
    }
    if (pooled.empty()) throw UsageError("sectors too small for gap ratios");
    double mean = 0.0;
    for (double r : pooled) mean += r;
    out.push_back({spec, 0, 0, pooled_levels, window, pooled_merged, mean / static_cast<double>(pooled.size())});
  }
  return out;
}

void write_ratio_csv_header(std::ostream& os) {
  os << "lambda,J,h,g,h_c,g_c,L,sector_k,sector_parity,n_levels,window,mean_r\n";
}

void write_ratio_csv_row(std::ostream& os, const RatioReport& r) {
  const auto& s = r.spec;
  os << format_g17(s.lambda) << ',' << format_g17(s.J) << ',' << format_g17(s.h) << ',' << format_g17(s.g) << ','
     << format_g17(s.h_c) << ',' << format_g17(s.g_c) << ',' << s.L << ',' << r.sector_k << ','
     << (r.sector_parity == 0 ? std::string("pooled") : std::to_string(r.sector_parity)) << ',' << r.n_levels << ','
     << (r.window ? std::to_string(*r.window) : std::string("all")) << ',' << format_g17(r.mean_r) << '\n';
}

}  // namespace ringstar
