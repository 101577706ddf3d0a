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

#include "ringstar/fit.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include <Eigen/Dense>
#include <unsupported/Eigen/LevenbergMarquardt>

#include "json.hpp"
#include "ringstar/error.hpp"

namespace ringstar {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Points {
  std::vector<double> t;
  std::vector<double> y;
};

Points select(const TimeSeries& s, FitWindow w) {
  s.validate();
  if (!(w.t_max > w.t_min)) throw UsageError("fit window must have t_max > t_min");
  Points p;
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (s.times[k] >= w.t_min && s.times[k] <= w.t_max) {
      if (!std::isfinite(s.values[k])) throw UsageError("non-finite value inside the fit window");
      p.t.push_back(s.times[k]);
      p.y.push_back(s.values[k]);
    }
  }
  return p;
}

FitWindow span_of(const std::vector<double>& t) { return {t.front(), t.back()}; }

// Residual and Jacobian callbacks wrapped for Eigen's Levenberg-Marquardt.
struct LeastSquares : Eigen::DenseFunctor<double> {
  using Residual = std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&)>;
  using Jacobian = std::function<void(const Eigen::VectorXd&, Eigen::MatrixXd&)>;

  LeastSquares(int n_params, int n_values, Residual r, Jacobian j)
      : Eigen::DenseFunctor<double>(n_params, n_values), residual(std::move(r)), jacobian(std::move(j)) {}

  int operator()(const Eigen::VectorXd& x, Eigen::VectorXd& f) const {
    residual(x, f);
    return 0;
  }
  int df(const Eigen::VectorXd& x, Eigen::MatrixXd& j) const {
    jacobian(x, j);
    return 0;
  }

  Residual residual;
  Jacobian jacobian;
};

bool converged(Eigen::LevenbergMarquardtSpace::Status s) {
  using namespace Eigen::LevenbergMarquardtSpace;
  return s != ImproperInputParameters && s != TooManyFunctionEvaluation && s != UserAsked &&
         s != NotStarted && s != Running;
}

// Returns sqrt(diag(s^2 (J^T J)^-1)) with s^2 = RSS / (n - p).
Eigen::VectorXd standard_errors(const Eigen::MatrixXd& j, double rss) {
  const Eigen::Index n = j.rows(), p = j.cols();
  Eigen::VectorXd se = Eigen::VectorXd::Constant(p, kNaN);
  if (n <= p) return se;
  const Eigen::MatrixXd jtj = j.transpose() * j;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(jtj);
  if (!lu.isInvertible()) return se;
  const Eigen::MatrixXd cov = lu.inverse() * (rss / static_cast<double>(n - p));
  for (Eigen::Index k = 0; k < p; ++k) se[k] = std::sqrt(std::max(cov(k, k), 0.0));
  return se;
}

struct LinearFit {
  double slope = 0, intercept = 0, se_slope = kNaN, se_intercept = kNaN, rss = 0;
};

LinearFit regress(const std::vector<double>& x, const std::vector<double>& y) {
  const auto n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    mx += x[k];
    my += y[k];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sxx += (x[k] - mx) * (x[k] - mx);
    sxy += (x[k] - mx) * (y[k] - my);
  }
  if (!(sxx > 0.0)) throw FitError("regression abscissae are all equal", kNaN);
  LinearFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double r = y[k] - f.intercept - f.slope * x[k];
    f.rss += r * r;
  }
  if (x.size() > 2) {
    const double s2 = f.rss / (n - 2.0);
    f.se_slope = std::sqrt(s2 / sxx);
    f.se_intercept = std::sqrt(s2 * (1.0 / n + mx * mx / sxx));
  }
  return f;
}

double wrap_phase(double phi) {
  phi = std::remainder(phi, 2.0 * std::numbers::pi);
  return phi <= -std::numbers::pi ? phi + 2.0 * std::numbers::pi : phi;
}

// Amplitude and phase of the best a cos(w t + phi) exp(-e t) at fixed (w, e).
std::pair<double, double> linear_amplitude(const Points& p, double w, double e, double* rss) {
  Eigen::MatrixXd a(static_cast<Eigen::Index>(p.t.size()), 2);
  Eigen::VectorXd y(a.rows());
  for (Eigen::Index k = 0; k < a.rows(); ++k) {
    const double t = p.t[static_cast<std::size_t>(k)];
    const double env = std::exp(-e * t);
    a(k, 0) = std::cos(w * t) * env;
    a(k, 1) = std::sin(w * t) * env;
    y[k] = p.y[static_cast<std::size_t>(k)];
  }
  const Eigen::Vector2d c = a.colPivHouseholderQr().solve(y);
  if (rss) *rss = (a * c - y).squaredNorm();
  // A cos + B sin = r cos(w t + phi) with phi = atan2(-B, A)
  return {std::hypot(c[0], c[1]), std::atan2(-c[1], c[0])};
}

}  // namespace

std::string to_string(FitModel m) {
  switch (m) {
    case FitModel::DecayingCosine:
      return "decaying_cosine";
    case FitModel::PowerLaw:
      return "power_law";
    case FitModel::LogLinear:
      return "loglinear";
  }
  return "unknown";
}

double FitResult::param(std::string_view name) const {
  for (const auto& [k, v] : params) {
    if (k == name) return v;
  }
  throw UsageError("no fit parameter named " + std::string(name));
}

double FitResult::stderr_of(std::string_view name) const {
  for (const auto& [k, v] : stderrs) {
    if (k == name) return v;
  }
  throw UsageError("no fit parameter named " + std::string(name));
}

std::string to_json(const FitResult& r) {
  nlohmann::ordered_json j;
  j["model_id"] = to_string(r.model);
  j["params"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.params) j["params"][k] = v;
  j["stderr"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.stderrs) j["stderr"][k] = v;
  j["residual_rms"] = r.residual_rms;
  j["window"] = {r.window.t_min, r.window.t_max};
  return j.dump();
}

TimeSeries moving_average(const TimeSeries& s, double period) {
  s.validate();
  if (!(period > 0.0)) throw UsageError("smoothing period must be positive");
  TimeSeries out;
  out.metadata = s.metadata;
  const double half = 0.5 * period;
  const double eps = 1e-12 * std::max(1.0, period);
  std::size_t lo = 0, hi = 0;
  double sum = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double ti = s.times[i];
    if (ti - half < s.times.front() - eps || ti + half > s.times.back() + eps) continue;
    while (hi < s.size() && s.times[hi] <= ti + half + eps) sum += s.values[hi++];
    while (lo < hi && s.times[lo] < ti - half - eps) sum -= s.values[lo++];
    out.times.push_back(ti);
    out.values.push_back(sum / static_cast<double>(hi - lo));
  }
  if (out.size() == 0) throw UsageError("series shorter than the smoothing period");
  return out;
}

FitResult fit_decaying_cosine(const TimeSeries& series, FitWindow w, const CosineFitOptions& opts) {
  const TimeSeries smoothed =
      opts.smooth ? moving_average(series, opts.smoothing_period) : TimeSeries{};
  const Points p = select(opts.smooth ? smoothed : series, w);
  const auto n = static_cast<Eigen::Index>(p.t.size());
  if (n < 8) throw FitError("decaying-cosine fit needs at least 8 points", kNaN);

  double mean = 0.0;
  for (double v : p.y) mean += v;
  mean /= static_cast<double>(n);
  double var = 0.0;
  for (double v : p.y) var += (v - mean) * (v - mean);
  const double sd = std::sqrt(var / static_cast<double>(n));
  if (sd <= 1e-12 * std::max(1.0, std::abs(mean))) throw FitError("constant series has no frequency", std::sqrt(var));

  // Periodogram on a 8x oversampled grid up to the Nyquist frequency of the
  // median spacing.
  const double span = p.t.back() - p.t.front();
  std::vector<double> gaps;
  for (Eigen::Index k = 1; k < n; ++k) gaps.push_back(p.t[static_cast<std::size_t>(k)] - p.t[static_cast<std::size_t>(k - 1)]);
  std::nth_element(gaps.begin(), gaps.begin() + static_cast<std::ptrdiff_t>(gaps.size() / 2), gaps.end());
  const double nyquist = std::numbers::pi / gaps[gaps.size() / 2];
  const double dw = 2.0 * std::numbers::pi / (8.0 * span);
  double best_w = 0.0, best_power = -1.0;
  for (double om = dw; om <= nyquist; om += dw) {
    double re = 0.0, im = 0.0;
    for (Eigen::Index k = 0; k < n; ++k) {
      const double t = p.t[static_cast<std::size_t>(k)];
      re += p.y[static_cast<std::size_t>(k)] * std::cos(om * t);
      im += p.y[static_cast<std::size_t>(k)] * std::sin(om * t);
    }
    const double pw = re * re + im * im;
    if (pw > best_power) {
      best_power = pw;
      best_w = om;
    }
  }
  if (best_w * span / (2.0 * std::numbers::pi) < 4.0) {
    throw FitError("fewer than four oscillation periods in the fit window", sd);
  }

  // Seed the decay rate from a few candidates.
  double best_e = 0.0, best_rss = std::numeric_limits<double>::infinity();
  for (double f : {0.0, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0}) {
    double rss = 0.0;
    linear_amplitude(p, best_w, f / span, &rss);
    if (rss < best_rss) {
      best_rss = rss;
      best_e = f / span;
    }
  }
  const auto [a0, phi0] = linear_amplitude(p, best_w, best_e, nullptr);

  auto model_fit = [&](bool fix_decay, Eigen::VectorXd x) {
    const int np = fix_decay ? 3 : 4;
    LeastSquares f(
        np, static_cast<int>(n),
        [&](const Eigen::VectorXd& q, Eigen::VectorXd& r) {
          const double e = fix_decay ? 0.0 : q[3];
          for (Eigen::Index k = 0; k < n; ++k) {
            const double t = p.t[static_cast<std::size_t>(k)];
            r[k] = q[0] * std::cos(q[1] * t + q[2]) * std::exp(-e * t) - p.y[static_cast<std::size_t>(k)];
          }
        },
        [&](const Eigen::VectorXd& q, Eigen::MatrixXd& j) {
          const double e = fix_decay ? 0.0 : q[3];
          for (Eigen::Index k = 0; k < n; ++k) {
            const double t = p.t[static_cast<std::size_t>(k)];
            const double env = std::exp(-e * t);
            const double c = std::cos(q[1] * t + q[2]) * env;
            const double s = std::sin(q[1] * t + q[2]) * env;
            j(k, 0) = c;
            j(k, 1) = -q[0] * t * s;
            j(k, 2) = -q[0] * s;
            if (!fix_decay) j(k, 3) = -q[0] * t * c;
          }
        });
    Eigen::LevenbergMarquardt<LeastSquares> lm(f);
    lm.setMaxfev(opts.max_evaluations);
    lm.setXtol(1e-14);
    lm.setFtol(1e-14);
    const auto status = lm.minimize(x);
    Eigen::VectorXd r(n);
    f(x, r);
    Eigen::MatrixXd j(n, np);
    f.df(x, j);
    return std::tuple{x, converged(status), r.squaredNorm(), j};
  };

  Eigen::VectorXd x0(4);
  x0 << a0, best_w, phi0, best_e;
  auto [x, ok, rss, jac] = model_fit(false, x0);
  bool fixed = false;
  if (x[3] < 0.0) {
    Eigen::VectorXd y0 = x0.head(3);
    std::tie(x, ok, rss, jac) = model_fit(true, y0);
    fixed = true;
  }
  const double rms = std::sqrt(rss / static_cast<double>(n));
  if (!ok || !std::isfinite(rss)) throw FitError("decaying-cosine fit did not converge", rms);

  double a = x[0], om = x[1], phi = x[2];
  if (om < 0.0) {
    om = -om;
    phi = -phi;
  }
  if (a < 0.0) {
    a = -a;
    phi += std::numbers::pi;
  }
  const Eigen::VectorXd se = standard_errors(jac, rss);

  FitResult out;
  out.model = FitModel::DecayingCosine;
  out.params = {{"a", a}, {"eps0", om}, {"phi", wrap_phase(phi)}, {"eps1", fixed ? 0.0 : x[3]}};
  out.stderrs = {{"a", se[0]}, {"eps0", se[1]}, {"phi", se[2]}, {"eps1", fixed ? 0.0 : se[3]}};
  out.residual_rms = rms;
  out.window = span_of(p.t);
  out.n_points = static_cast<int>(n);
  return out;
}

FitResult fit_power_law(const TimeSeries& s, FitWindow w) {
  const Points p = select(s, w);
  // Longest contiguous run of strictly positive (t, value).
  std::size_t best_start = 0, best_len = 0, start = 0;
  for (std::size_t k = 0; k <= p.t.size(); ++k) {
    const bool good = k < p.t.size() && p.t[k] > 0.0 && p.y[k] > 0.0;
    if (good) continue;
    if (k - start > best_len) {
      best_len = k - start;
      best_start = start;
    }
    start = k + 1;
  }
  if (best_len < 3) throw FitError("power-law fit needs three positive points", kNaN);
  std::vector<double> lx, ly;
  for (std::size_t k = best_start; k < best_start + best_len; ++k) {
    lx.push_back(std::log(p.t[k]));
    ly.push_back(std::log(p.y[k]));
  }
  const LinearFit f = regress(lx, ly);
  const double alpha = std::exp(f.intercept);
  FitResult out;
  out.model = FitModel::PowerLaw;
  out.params = {{"alpha", alpha}, {"log_alpha", f.intercept}, {"beta", f.slope}};
  out.stderrs = {{"alpha", alpha * f.se_intercept}, {"log_alpha", f.se_intercept}, {"beta", f.se_slope}};
  out.residual_rms = std::sqrt(f.rss / static_cast<double>(best_len));
  out.window = {p.t[best_start], p.t[best_start + best_len - 1]};
  out.n_points = static_cast<int>(best_len);
  out.dropped = static_cast<int>(p.t.size() - best_len);
  return out;
}

FitResult fit_loglinear(const TimeSeries& s, FitWindow w) {
  const Points p = select(s, w);
  if (p.t.size() < 3) throw FitError("log-linear fit needs three points", kNaN);
  if (!(p.t.front() > 0.0)) throw UsageError("log-linear fit needs t > 0");
  std::vector<double> lx;
  for (double t : p.t) lx.push_back(std::log(t));
  const LinearFit f = regress(lx, p.y);
  FitResult out;
  out.model = FitModel::LogLinear;
  out.params = {{"c", f.slope}, {"d", f.intercept}};
  out.stderrs = {{"c", f.se_slope}, {"d", f.se_intercept}};
  out.residual_rms = std::sqrt(f.rss / static_cast<double>(p.t.size()));
  out.window = span_of(p.t);
  out.n_points = static_cast<int>(p.t.size());
  return out;
}

GrowthComparison compare_log_vs_power(const TimeSeries& s, FitWindow w) {
  GrowthComparison c;
  c.loglinear = fit_loglinear(s, w);
  const FitResult start = fit_power_law(s, w);
  const Points p = select(s, w);
  const auto n = static_cast<Eigen::Index>(p.t.size());
  LeastSquares f(
      2, static_cast<int>(n),
      [&](const Eigen::VectorXd& q, Eigen::VectorXd& r) {
        for (Eigen::Index k = 0; k < n; ++k) {
          const auto i = static_cast<std::size_t>(k);
          r[k] = std::exp(q[0] + q[1] * std::log(p.t[i])) - p.y[i];
        }
      },
      [&](const Eigen::VectorXd& q, Eigen::MatrixXd& j) {
        for (Eigen::Index k = 0; k < n; ++k) {
          const double lt = std::log(p.t[static_cast<std::size_t>(k)]);
          const double v = std::exp(q[0] + q[1] * lt);
          j(k, 0) = v;
          j(k, 1) = v * lt;
        }
      });
  Eigen::VectorXd x(2);
  x << start.param("log_alpha"), start.param("beta");
  Eigen::LevenbergMarquardt<LeastSquares> lm(f);
  lm.setMaxfev(2000);
  lm.minimize(x);
  Eigen::VectorXd r(n);
  f(x, r);
  Eigen::MatrixXd j(n, 2);
  f.df(x, j);
  double rss = r.squaredNorm();
  // Keep the regression estimate if the refinement wandered off.
  Eigen::VectorXd r0(n);
  Eigen::VectorXd x0(2);
  x0 << start.param("log_alpha"), start.param("beta");
  f(x0, r0);
  if (!std::isfinite(rss) || r0.squaredNorm() < rss) {
    x = x0;
    rss = r0.squaredNorm();
    f.df(x, j);
  }
  const Eigen::VectorXd se = standard_errors(j, rss);
  c.power_law.model = FitModel::PowerLaw;
  c.power_law.params = {{"alpha", std::exp(x[0])}, {"log_alpha", x[0]}, {"beta", x[1]}};
  c.power_law.stderrs = {{"alpha", std::exp(x[0]) * se[0]}, {"log_alpha", se[0]}, {"beta", se[1]}};
  c.power_law.residual_rms = std::sqrt(rss / static_cast<double>(n));
  c.power_law.window = span_of(p.t);
  c.power_law.n_points = static_cast<int>(n);
  c.loglinear_better = c.loglinear.residual_rms < c.power_law.residual_rms;
  return c;
}

LambdaScaling find_lambda_c(std::span<const LambdaCurve> curves) {
  LambdaScaling out;
  for (const auto& c : curves) {
    if (c.lambdas.size() != c.values.size()) throw UsageError("curve length mismatch");
    if (c.lambdas.size() < 8) throw UsageError("each curve needs at least 8 lambda points");
    std::vector<std::size_t> order(c.lambdas.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return c.lambdas[a] < c.lambdas[b]; });
    std::vector<double> x, y;
    for (auto k : order) {
      x.push_back(c.lambdas[k]);
      y.push_back(c.values[k]);
    }
    const auto m = static_cast<std::size_t>(std::max_element(y.begin(), y.end()) - y.begin());
    LambdaPeak peak{c.L, c.h_c, x[m], m == 0 || m + 1 == x.size()};
    if (!peak.at_edge) {
      const double x0 = x[m - 1], x1 = x[m], x2 = x[m + 1];
      const double y0 = y[m - 1], y1 = y[m], y2 = y[m + 1];
      const double num = (x1 - x0) * (x1 - x0) * (y1 - y2) - (x1 - x2) * (x1 - x2) * (y1 - y0);
      const double den = (x1 - x0) * (y1 - y2) - (x1 - x2) * (y1 - y0);
      if (den != 0.0) peak.lambda_c = x1 - 0.5 * num / den;
    }
    out.peaks.push_back(peak);
  }

  std::vector<const LambdaPeak*> use;
  for (const auto& p : out.peaks) {
    if (!p.at_edge && p.lambda_c > 0.0 && p.L > 0) use.push_back(&p);
  }
  if (use.size() < 2) throw FitError("fewer than two interior maxima", kNaN);
  bool several_hc = false;
  for (const auto* p : use) several_hc |= p->h_c != use.front()->h_c;

  if (!several_hc) {
    std::vector<double> lx, ly;
    for (const auto* p : use) {
      lx.push_back(std::log(static_cast<double>(p->L)));
      ly.push_back(std::log(p->lambda_c));
    }
    const LinearFit f = regress(lx, ly);
    out.gamma = f.slope;
    out.gamma_stderr = f.se_slope;
    out.log_prefactor = f.intercept;
    return out;
  }
  const auto n = static_cast<Eigen::Index>(use.size());
  Eigen::MatrixXd a(n, 3);
  Eigen::VectorXd b(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const auto* p = use[static_cast<std::size_t>(k)];
    if (!(p->h_c > 0.0)) throw FitError("h_c scaling needs positive fields", kNaN);
    a(k, 0) = 1.0;
    a(k, 1) = std::log(static_cast<double>(p->L));
    a(k, 2) = std::log(p->h_c);
    b[k] = std::log(p->lambda_c);
  }
  const Eigen::Vector3d coef = a.colPivHouseholderQr().solve(b);
  const Eigen::VectorXd se = standard_errors(a, (a * coef - b).squaredNorm());
  out.log_prefactor = coef[0];
  out.gamma = coef[1];
  out.gamma_stderr = se[1];
  out.kappa = coef[2];
  out.kappa_stderr = se[2];
  return out;
}

double select_t_star(const TimeSeries& s) {
  s.validate();
  if (s.size() < 3) throw FitError("reference series too short", kNaN);
  const double t_end = s.times.back();
  const double t_tail = t_end - 0.1 * (t_end - s.times.front());
  double sat = 0.0;
  int count = 0;
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (s.times[k] >= t_tail) {
      sat += s.values[k];
      ++count;
    }
  }
  sat /= count;
  if (count < 2 || !(sat > 0.0)) throw FitError("reference series has no positive saturation tail", kNaN);
  double dev = 0.0;
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (s.times[k] >= t_tail) dev = std::max(dev, std::abs(s.values[k] - sat));
  }
  if (dev > 0.05 * sat) throw FitError("reference series is not saturated", dev / sat);
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (s.values[k] >= 0.5 * sat) return s.times[k];
  }
  throw FitError("reference series never reaches half saturation", kNaN);
}

}  // namespace ringstar
