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

#include "ringstar/observables.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "ringstar/dynamics.hpp"
#include "ringstar/error.hpp"
#include "ringstar/kernel.hpp"
#include "ringstar/numfmt.hpp"

namespace ringstar {
namespace {

constexpr Eigen::Index kTimeChunk = 32;
constexpr std::size_t kAutoSpectralDim = 1024;

void check_site(const ModelSpec& spec, SitePauli p) {
  if (p.site < 0 || p.site >= spec.n_sites()) throw UsageError("operator site out of range");
  if (p.axis == Pauli::I) throw UsageError("OTOC operators must be X, Y or Z");
}

std::string describe(SitePauli p) {
  return std::string(1, pauli_char(p.axis)) + std::to_string(p.site);
}

void check_grid(std::span<const double> t) {
  if (t.empty()) throw UsageError("time grid is empty");
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (!std::isfinite(t[k])) throw UsageError("time grid must be finite");
    if (k > 0 && !(t[k] > t[k - 1])) throw UsageError("time grid must be strictly increasing");
  }
}

void apply_to_column(Eigen::MatrixXcd& m, Eigen::Index col, SitePauli p) {
  apply_pauli(std::span<cplx>(m.col(col).data(), static_cast<std::size_t>(m.rows())), p.site, p.axis);
}

// Real matrix R with sigma = phase * R: X and Z themselves, X*Z for Y.
void apply_real_pauli_rows(Eigen::MatrixXd& m, SitePauli p) {
  const auto bit = std::uint64_t{1} << p.site;
  const auto n = static_cast<std::uint64_t>(m.rows());
  if (p.axis == Pauli::Z || p.axis == Pauli::Y) {
    for (std::uint64_t b = 0; b < n; ++b) {
      if (b & bit) m.row(static_cast<Eigen::Index>(b)) *= -1.0;
    }
  }
  if (p.axis == Pauli::X || p.axis == Pauli::Y) {
    for (std::uint64_t b = 0; b < n; ++b) {
      if (!(b & bit)) m.row(static_cast<Eigen::Index>(b)).swap(m.row(static_cast<Eigen::Index>(b | bit)));
    }
  }
}

Eigen::MatrixXd eigenbasis_operator(const SpectralPropagator& prop, SitePauli p) {
  Eigen::MatrixXd rq = prop.vectors();
  apply_real_pauli_rows(rq, p);
  return prop.vectors().transpose() * rq;
}

bool use_spectral(const ModelSpec& spec, const DynamicsOptions& opts) {
  switch (opts.method) {
    case OtocMethod::Spectral:
      return true;
    case OtocMethod::Krylov:
      return false;
    case OtocMethod::Automatic:
      break;
  }
  return spec.dim() <= std::min(kAutoSpectralDim, opts.limits.max_dense_dim);
}

TimeSeries make_series(const ModelSpec& spec, std::span<const double> t_grid, std::string observable) {
  TimeSeries s;
  s.times.assign(t_grid.begin(), t_grid.end());
  s.values.assign(t_grid.size(), 0.0);
  s.set_meta("observable", std::move(observable));
  describe_model(s, spec);
  return s;
}

double half_commutator_norm(const Eigen::VectorXcd& wv, Eigen::VectorXcd w, SitePauli v) {
  apply_pauli(w, v.site, v.axis);
  return 0.5 * (wv - w).squaredNorm();
}

std::vector<std::vector<double>> otoc_spectral(const ModelSpec& spec, const StateVector& psi0, SitePauli v,
                                               std::span<const SitePauli> ws, std::span<const double> t,
                                               const DynamicsOptions& opts) {
  const auto prop = SpectralPropagator::for_model(spec, opts.limits);
  const Eigen::Index n = prop.dim();
  const Eigen::VectorXd& e = prop.energies();
  Eigen::MatrixXcd x(n, 2);
  x.col(0) = psi0.amplitudes();
  x.col(1) = psi0.amplitudes();
  apply_to_column(x, 1, v);
  const Eigen::MatrixXcd xt = prop.to_eigenbasis(x);

  std::vector<std::vector<double>> out(ws.size(), std::vector<double>(t.size()));
  const auto nt = static_cast<Eigen::Index>(t.size());
  for (Eigen::Index k0 = 0; k0 < nt; k0 += kTimeChunk) {
    const Eigen::Index nk = std::min(kTimeChunk, nt - k0);
    Eigen::MatrixXcd f(n, 2 * nk);
    for (Eigen::Index k = 0; k < nk; ++k) {
      const double tk = t[static_cast<std::size_t>(k0 + k)];
      for (Eigen::Index a = 0; a < n; ++a) {
        const cplx ph = std::exp(cplx{0.0, -e[a] * tk});
        f(a, 2 * k) = ph * xt(a, 0);
        f(a, 2 * k + 1) = ph * xt(a, 1);
      }
    }
    const Eigen::MatrixXcd forward = prop.from_eigenbasis(f);
    for (std::size_t iw = 0; iw < ws.size(); ++iw) {
      Eigen::MatrixXcd g = forward;
      for (Eigen::Index c = 0; c < g.cols(); ++c) apply_to_column(g, c, ws[iw]);
      Eigen::MatrixXcd gt = prop.to_eigenbasis(g);
      for (Eigen::Index k = 0; k < nk; ++k) {
        const double tk = t[static_cast<std::size_t>(k0 + k)];
        for (Eigen::Index a = 0; a < n; ++a) {
          const cplx ph = std::exp(cplx{0.0, e[a] * tk});
          gt(a, 2 * k) *= ph;
          gt(a, 2 * k + 1) *= ph;
        }
      }
      const Eigen::MatrixXcd back = prop.from_eigenbasis(gt);
      for (Eigen::Index k = 0; k < nk; ++k) {
        out[iw][static_cast<std::size_t>(k0 + k)] = half_commutator_norm(back.col(2 * k + 1), back.col(2 * k), v);
      }
    }
  }
  return out;
}

std::vector<std::vector<double>> otoc_krylov(const ModelSpec& spec, const StateVector& psi0, SitePauli v,
                                             std::span<const SitePauli> ws, std::span<const double> t,
                                             const DynamicsOptions& opts) {
  const HamiltonianKernel kernel(spec);
  KrylovPropagator prop(kernel, opts.krylov);
  Eigen::VectorXcd f0 = psi0.amplitudes();
  Eigen::VectorXcd f1 = f0;
  apply_pauli(f1, v.site, v.axis);
  std::vector<std::vector<double>> out(ws.size(), std::vector<double>(t.size()));
  double now = 0.0;
  for (std::size_t k = 0; k < t.size(); ++k) {
    prop.evolve(f0, t[k] - now);
    prop.evolve(f1, t[k] - now);
    now = t[k];
    for (std::size_t iw = 0; iw < ws.size(); ++iw) {
      Eigen::VectorXcd g0 = f0, g1 = f1;
      apply_pauli(g0, ws[iw].site, ws[iw].axis);
      apply_pauli(g1, ws[iw].site, ws[iw].axis);
      prop.evolve(g0, -now);
      prop.evolve(g1, -now);
      out[iw][k] = half_commutator_norm(g1, std::move(g0), v);
    }
  }
  return out;
}

}  // namespace

Bipartition Bipartition::half_chain(int L) {
  if (L < 1) throw UsageError("L must be >= 1");
  Bipartition b;
  for (int i = 0; i < (L + 1) / 2; ++i) b.ring_sites_a.push_back(i);
  return b;
}

std::uint64_t Bipartition::mask_a(int L) const {
  std::uint64_t m = 0;
  for (int s : ring_sites_a) {
    if (s < 0 || s >= L) throw UsageError("bipartition site out of range");
    m |= std::uint64_t{1} << s;
  }
  if (cqubit_in_a) m |= std::uint64_t{1} << L;
  const std::uint64_t full = (L + 1 == 64) ? ~std::uint64_t{0} : (std::uint64_t{1} << (L + 1)) - 1;
  if (m == 0 || m == full) throw UsageError("subsystem A must be nonempty and proper");
  return m;
}

double entanglement_entropy(const StateVector& psi, const Bipartition& part) {
  const int n = psi.n_sites();
  const std::uint64_t ma = part.mask_a(n - 1);
  const int na = std::popcount(ma);
  const Eigen::Index da = Eigen::Index{1} << na;
  const Eigen::Index db = Eigen::Index{1} << (n - na);
  Eigen::MatrixXcd m(da, db);
  for (std::uint64_t b = 0; b < psi.dim(); ++b) {
    std::uint64_t ra = 0, rb = 0;
    int ia = 0, ib = 0;
    for (int s = 0; s < n; ++s) {
      const std::uint64_t bit = (b >> s) & 1U;
      if ((ma >> s) & 1U) {
        ra |= bit << ia++;
      } else {
        rb |= bit << ib++;
      }
    }
    m(static_cast<Eigen::Index>(ra), static_cast<Eigen::Index>(rb)) = psi[b];
  }
  const Eigen::MatrixXcd gram = da <= db ? Eigen::MatrixXcd(m * m.adjoint()) : Eigen::MatrixXcd(m.adjoint() * m);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& p = es.eigenvalues();
  const double total = p.sum();
  if (!(total > 0.0)) throw NumericalError("entropy of a zero state");
  double s = 0.0;
  for (Eigen::Index k = 0; k < p.size(); ++k) {
    const double x = p[k] / total;
    if (x > 1e-12) s -= x * std::log(x);
  }
  return std::max(s, 0.0);
}

double page_value(std::size_t dim_a, std::size_t dim_b) {
  if (dim_a == 0 || dim_b == 0) throw UsageError("Page value needs positive dimensions");
  const std::size_t m = std::min(dim_a, dim_b), n = std::max(dim_a, dim_b);
  double s = 0.0;
  for (std::size_t k = m * n; k > n; --k) s += 1.0 / static_cast<double>(k);
  return s - static_cast<double>(m - 1) / (2.0 * static_cast<double>(n));
}

std::vector<TimeSeries> otoc_multi(const ModelSpec& spec, const StateVector& psi0, SitePauli v,
                                   std::span<const SitePauli> ws, std::span<const double> t_grid,
                                   const DynamicsOptions& opts) {
  spec.validate();
  if (psi0.n_sites() != spec.n_sites()) throw UsageError("state size does not match the model");
  check_site(spec, v);
  for (const auto& w : ws) check_site(spec, w);
  check_grid(t_grid);
  const bool spectral = use_spectral(spec, opts);
  auto values = spectral ? otoc_spectral(spec, psi0, v, ws, t_grid, opts)
                         : otoc_krylov(spec, psi0, v, ws, t_grid, opts);
  std::vector<TimeSeries> out;
  out.reserve(ws.size());
  for (std::size_t iw = 0; iw < ws.size(); ++iw) {
    TimeSeries s = make_series(spec, t_grid, "otoc");
    s.set_meta("V", describe(v));
    s.set_meta("W", describe(ws[iw]));
    s.set_meta("method", spectral ? "spectral" : "krylov");
    s.values = std::move(values[iw]);
    out.push_back(std::move(s));
  }
  return out;
}

TimeSeries otoc(const ModelSpec& spec, const StateVector& psi0, SitePauli v, SitePauli w,
                std::span<const double> t_grid, const DynamicsOptions& opts) {
  return std::move(otoc_multi(spec, psi0, v, std::span<const SitePauli>(&w, 1), t_grid, opts).front());
}

int default_haar_samples(int n_sites) { return n_sites >= 12 ? 1 : 20; }

TimeSeries otoc_haar(const ModelSpec& spec, SitePauli v, SitePauli w, std::span<const double> t_grid,
                     int samples, std::uint64_t seed, const DynamicsOptions& opts) {
  if (samples < 1) throw UsageError("Haar sample count must be >= 1");
  TimeSeries acc;
  for (int k = 0; k < samples; ++k) {
    const auto psi = state_haar(spec.n_sites(), derive_seed(seed, static_cast<std::uint64_t>(k)));
    TimeSeries s = otoc(spec, psi, v, w, t_grid, opts);
    if (k == 0) {
      acc = std::move(s);
    } else {
      for (std::size_t i = 0; i < acc.size(); ++i) acc.values[i] += s.values[i];
    }
  }
  for (double& x : acc.values) x /= samples;
  acc.set_meta("samples", std::to_string(samples));
  acc.set_meta("seed", std::to_string(seed));
  return acc;
}

TimeSeries otoc_exact_trace(const ModelSpec& spec, SitePauli v, SitePauli w, std::span<const double> t_grid,
                            const DenseLimits& limits) {
  spec.validate();
  check_site(spec, v);
  check_site(spec, w);
  check_grid(t_grid);
  const auto prop = SpectralPropagator::for_model(spec, limits);
  const Eigen::Index n = prop.dim();
  const Eigen::VectorXd& e = prop.energies();
  const Eigen::MatrixXd rw = eigenbasis_operator(prop, w);
  const Eigen::MatrixXd rv = eigenbasis_operator(prop, v);

  TimeSeries s = make_series(spec, t_grid, "otoc");
  s.set_meta("V", describe(v));
  s.set_meta("W", describe(w));
  s.set_meta("method", "exact_trace");
  Eigen::MatrixXd mr(n, n), mi(n, n);
  for (std::size_t k = 0; k < t_grid.size(); ++k) {
    const Eigen::ArrayXd c = (e * t_grid[k]).array().cos();
    const Eigen::ArrayXd sn = (e * t_grid[k]).array().sin();
    // (R_w)_ab exp(i (E_a - E_b) t)
    for (Eigen::Index b = 0; b < n; ++b) {
      for (Eigen::Index a = 0; a < n; ++a) {
        mr(a, b) = rw(a, b) * (c[a] * c[b] + sn[a] * sn[b]);
        mi(a, b) = rw(a, b) * (sn[a] * c[b] - c[a] * sn[b]);
      }
    }
    const double kr = (mr * rv - rv * mr).squaredNorm();
    const double ki = (mi * rv - rv * mi).squaredNorm();
    s.values[k] = (kr + ki) / (2.0 * static_cast<double>(n));
  }
  return s;
}

TimeSeries two_time_autocorrelation(const ModelSpec& spec, SitePauli op, std::span<const double> t_grid,
                                    TraceMode mode, int samples, std::uint64_t seed,
                                    const DynamicsOptions& opts) {
  spec.validate();
  check_site(spec, op);
  check_grid(t_grid);
  TimeSeries s = make_series(spec, t_grid, "autocorrelation");
  s.set_meta("operator", describe(op));

  if (mode == TraceMode::ExactTrace) {
    s.set_meta("method", "exact_trace");
    const auto prop = SpectralPropagator::for_model(spec, opts.limits);
    const Eigen::Index n = prop.dim();
    const Eigen::MatrixXd r = eigenbasis_operator(prop, op);
    const Eigen::MatrixXd msq = r.cwiseAbs2();
    const auto nt = static_cast<Eigen::Index>(t_grid.size());
    for (Eigen::Index k0 = 0; k0 < nt; k0 += kTimeChunk) {
      const Eigen::Index nk = std::min(kTimeChunk, nt - k0);
      Eigen::MatrixXd cs(n, 2 * nk);
      for (Eigen::Index k = 0; k < nk; ++k) {
        const double tk = t_grid[static_cast<std::size_t>(k0 + k)];
        cs.col(2 * k) = (prop.energies() * tk).array().cos().matrix();
        cs.col(2 * k + 1) = (prop.energies() * tk).array().sin().matrix();
      }
      const Eigen::MatrixXd mcs = msq * cs;
      for (Eigen::Index k = 0; k < nk; ++k) {
        const double val = cs.col(2 * k).dot(mcs.col(2 * k)) + cs.col(2 * k + 1).dot(mcs.col(2 * k + 1));
        s.values[static_cast<std::size_t>(k0 + k)] = val / static_cast<double>(n);
      }
    }
    return s;
  }

  if (samples <= 0) samples = default_haar_samples(spec.n_sites());
  s.set_meta("method", "haar_typicality");
  s.set_meta("samples", std::to_string(samples));
  s.set_meta("seed", std::to_string(seed));
  const HamiltonianKernel kernel(spec);
  KrylovPropagator prop(kernel, opts.krylov);
  for (int j = 0; j < samples; ++j) {
    Eigen::VectorXcd u = state_haar(spec.n_sites(), derive_seed(seed, static_cast<std::uint64_t>(j))).amplitudes();
    Eigen::VectorXcd w = u;
    apply_pauli(w, op.site, op.axis);
    double now = 0.0;
    for (std::size_t k = 0; k < t_grid.size(); ++k) {
      prop.evolve(u, t_grid[k] - now);
      prop.evolve(w, t_grid[k] - now);
      now = t_grid[k];
      Eigen::VectorXcd su = u;
      apply_pauli(su, op.site, op.axis);
      s.values[k] += su.dot(w).real();
    }
  }
  for (double& x : s.values) x /= samples;
  return s;
}

double long_time_average(const TimeSeries& s, double t0) {
  s.validate();
  if (s.size() < 2) throw UsageError("time average needs at least two points");
  if (!(t0 > s.times.front()) || t0 > s.times.back()) throw UsageError("t0 outside the series range");
  double acc = 0.0;
  for (std::size_t k = 1; k < s.size(); ++k) {
    const double ta = s.times[k - 1];
    if (ta >= t0) break;
    double tb = s.times[k];
    double fa = std::abs(s.values[k - 1]);
    double fb = std::abs(s.values[k]);
    if (tb > t0) {
      const double frac = (t0 - ta) / (tb - ta);
      fb = std::abs(s.values[k - 1] + frac * (s.values[k] - s.values[k - 1]));
      tb = t0;
    }
    acc += 0.5 * (fa + fb) * (tb - ta);
  }
  return acc / (t0 - s.times.front());
}

StateVector make_initial_state(int n_sites, const InitialState& init) {
  return init.kind == InitialState::Kind::PlusY ? state_plus_y(n_sites) : state_haar(n_sites, init.seed);
}

TimeSeries quench_entropy_trajectory(const ModelSpec& spec, const InitialState& init, const Bipartition& part,
                                     std::span<const double> t_grid, const KrylovParams& krylov) {
  spec.validate();
  check_grid(t_grid);
  if (t_grid.front() < 0.0) throw UsageError("quench grid must start at t >= 0");
  part.mask_a(spec.L);
  TimeSeries s = make_series(spec, t_grid, "entanglement_entropy");
  s.set_meta("initial", init.kind == InitialState::Kind::PlusY ? "plus_y" : "haar");
  if (init.kind == InitialState::Kind::Haar) s.set_meta("seed", std::to_string(init.seed));
  std::string sites;
  for (int a : part.ring_sites_a) sites += (sites.empty() ? "" : " ") + std::to_string(a);
  s.set_meta("subsystem_a", sites);
  s.set_meta("cqubit_in_a", part.cqubit_in_a ? "true" : "false");

  const HamiltonianKernel kernel(spec);
  KrylovPropagator prop(kernel, krylov);
  StateVector psi = make_initial_state(spec.n_sites(), init);
  double now = 0.0;
  for (std::size_t k = 0; k < t_grid.size(); ++k) {
    prop.evolve(psi.amplitudes(), t_grid[k] - now);
    now = t_grid[k];
    s.values[k] = entanglement_entropy(psi, part);
  }
  return s;
}

}  // namespace ringstar
