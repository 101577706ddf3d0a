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

#include "ringstar/star.hpp"

#include <cmath>

#include "ringstar/error.hpp"
#include "ringstar/numfmt.hpp"

namespace ringstar {

void StarParams::validate() const {
  if (L < 1) throw UsageError("star graph needs L >= 1");
  if (!std::isfinite(lambda) || !std::isfinite(h_c)) throw UsageError("star couplings must be finite");
}

double star_autocorrelation_exact(const StarParams& p, double t) {
  p.validate();
  const int m = p.L - 1;
  const double hc2 = p.h_c * p.h_c;
  const double l2 = p.lambda * p.lambda;
  // C(m, n) / 2^L, updated multiplicatively.
  double weight = std::ldexp(1.0, -p.L);
  double sum = 0.0;
  for (int n_up = 0; n_up <= m; ++n_up) {
    const double spect = 2.0 * n_up - m;
    double part = 0.0;
    for (int zi : {1, -1}) {
      const double z = spect + zi;
      const double zp = spect - zi;
      const double w = std::sqrt(hc2 + l2 * z * z);
      const double wp = std::sqrt(hc2 + l2 * zp * zp);
      const double dot = (w * wp == 0.0) ? 1.0 : (hc2 + l2 * z * zp) / (w * wp);
      part += std::cos(w * t) * std::cos(wp * t) + dot * std::sin(w * t) * std::sin(wp * t);
    }
    sum += weight * part;
    weight = weight * (m - n_up) / (n_up + 1);
  }
  return sum;
}

TimeSeries star_autocorrelation_series(const StarParams& p, std::span<const double> t_grid) {
  TimeSeries s;
  s.times.assign(t_grid.begin(), t_grid.end());
  s.values.reserve(t_grid.size());
  for (double t : t_grid) s.values.push_back(star_autocorrelation_exact(p, t));
  s.set_meta("observable", "star_autocorrelation");
  s.set_meta("L", std::to_string(p.L));
  s.set_meta("lambda", format_shortest(p.lambda));
  s.set_meta("h_c", format_shortest(p.h_c));
  s.validate();
  return s;
}

double star_otoc_exact(const StarParams& p, double t) {
  p.validate();
  if (p.h_c != 0.0) throw UsageError("the closed-form star OTOC requires h_c = 0");
  const double s = std::sin(2.0 * p.lambda * t);
  return 2.0 * s * s;
}

double EarlyTimeLaw::operator()(double t) const { return coefficient * std::pow(t, 2 * order); }

EarlyTimeLaw otoc_early_time_law(const PauliSum& h, SitePauli v, SitePauli w, int max_order) {
  const int n = h.n_sites();
  if (v.site < 0 || v.site >= n || w.site < 0 || w.site >= n) throw UsageError("operator site out of range");
  if (max_order < 1) throw UsageError("max_order must be >= 1");
  const PauliSum vs(PauliString::single(n, v.site, v.axis));
  const PauliSum ws(PauliString::single(n, w.site, w.axis));
  const auto nested = bch_nested(h, ws, max_order);
  double factorial = 1.0;
  for (int order = 0; order <= max_order; ++order) {
    if (order > 0) factorial *= order;
    const PauliSum& term = order == 0 ? ws : nested[static_cast<std::size_t>(order - 1)];
    const PauliSum k = commutator(term, vs);
    double weight = 0.0;
    for (const auto& [key, c] : k.terms()) weight += std::norm(c);
    if (weight > 0.0) return {order, 0.5 * weight / (factorial * factorial)};
  }
  throw NumericalError("operators commute up to the requested order");
}

EarlyTimeLaw otoc_early_time_law(const ModelSpec& spec, SitePauli v, SitePauli w, int max_order) {
  return otoc_early_time_law(build_pauli_sum(spec), v, w, max_order);
}

TimeSeries early_time_curve(const EarlyTimeLaw& law, std::span<const double> t_grid) {
  TimeSeries s;
  s.times.assign(t_grid.begin(), t_grid.end());
  for (double t : t_grid) s.values.push_back(law(t));
  s.set_meta("observable", "otoc_early_time_law");
  s.set_meta("order", std::to_string(law.order));
  s.set_meta("coefficient", format_shortest(law.coefficient));
  s.validate();
  return s;
}

}  // namespace ringstar
