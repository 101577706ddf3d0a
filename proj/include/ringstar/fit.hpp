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

// Curve fits: decaying cosine, power law, log-linear growth, and the
// crossover-point and saturation-time extraction used on entropy families.

#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ringstar/timeseries.hpp"

namespace ringstar {

enum class FitModel { DecayingCosine, PowerLaw, LogLinear };

std::string to_string(FitModel m);

struct FitWindow {
  double t_min = 0.0;
  double t_max = 0.0;
};

struct FitResult {
  FitModel model = FitModel::PowerLaw;
  std::vector<std::pair<std::string, double>> params;
  std::vector<std::pair<std::string, double>> stderrs;
  double residual_rms = 0.0;
  /// Range of the points actually used.
  FitWindow window;
  int n_points = 0;
  /// Points dropped from the requested window (power law only).
  int dropped = 0;

  double param(std::string_view name) const;
  double stderr_of(std::string_view name) const;
};

/// {"model_id", "params", "stderr", "residual_rms", "window"}.
std::string to_json(const FitResult& r);

struct CosineFitOptions {
  /// Centered moving average over `smoothing_period` before fitting.
  bool smooth = false;
  double smoothing_period = 0.0;
  int max_evaluations = 2000;
};

/// Least squares a * cos(eps0 t + phi) * exp(-eps1 t) with eps0, eps1 >= 0,
/// started from the periodogram peak. Parameters: a, eps0, phi, eps1.
/// Throws FitError for constant input, fewer than four periods in the window,
/// or non-convergence.
FitResult fit_decaying_cosine(const TimeSeries& s, FitWindow w, const CosineFitOptions& opts = {});

/// ln value = ln alpha + beta ln t by linear regression. Shrinks the window to
/// the longest contiguous run of positive values and times. Parameters:
/// alpha, log_alpha, beta.
FitResult fit_power_law(const TimeSeries& s, FitWindow w);

/// value = c ln t + d. Parameters: c, d.
FitResult fit_loglinear(const TimeSeries& s, FitWindow w);

struct GrowthComparison {
  FitResult loglinear;
  /// Power law refined by least squares on the values themselves.
  FitResult power_law;
  bool loglinear_better = false;
};

/// Compares residuals of c ln t + d and alpha t^beta on the same points.
GrowthComparison compare_log_vs_power(const TimeSeries& s, FitWindow w);

struct LambdaCurve {
  int L = 0;
  double h_c = 0.0;
  std::vector<double> lambdas;
  std::vector<double> values;
};

struct LambdaPeak {
  int L = 0;
  double h_c = 0.0;
  double lambda_c = 0.0;
  bool at_edge = false;
};

struct LambdaScaling {
  std::vector<LambdaPeak> peaks;
  /// lambda_c ~ exp(c) L^gamma h_c^kappa over peaks not at an edge.
  double log_prefactor = 0.0;
  double gamma = 0.0;
  double gamma_stderr = 0.0;
  std::optional<double> kappa;
  std::optional<double> kappa_stderr;
};

/// Quadratic interpolation through the sampled maximum of each curve (at
/// least 8 points). Maxima on the first or last sample are flagged and left
/// out of the regression. Throws FitError with fewer than two usable peaks.
LambdaScaling find_lambda_c(std::span<const LambdaCurve> curves);

/// Earliest time with S(t) >= S_sat / 2, where S_sat is the mean over the last
/// tenth of the time span. Throws FitError if that tail varies by more than 5%.
double select_t_star(const TimeSeries& reference);

/// Centered moving average over +-period/2; edge points without a full
/// window are dropped.
TimeSeries moving_average(const TimeSeries& s, double period);

}  // namespace ringstar
