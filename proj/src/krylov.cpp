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

#include "ringstar/krylov.hpp"

#include <cmath>
#include <iostream>
#include <span>

#include <Eigen/Eigenvalues>

#include "ringstar/error.hpp"

namespace ringstar {
namespace {

constexpr int kMaxHalvings = 40;
constexpr double kRoundoffFloor = 1e-14;
constexpr double kNormDrift = 1e-9;
constexpr double kOrthogonalityLoss = 1e-8;

}  // namespace

void KrylovParams::validate() const {
  if (subspace_dim < 2) throw UsageError("Krylov subspace dimension must be >= 2");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw UsageError("Krylov step must be positive");
  if (!(tolerance > 0.0)) throw UsageError("Krylov tolerance must be positive");
}

KrylovPropagator::KrylovPropagator(const HamiltonianKernel& h, KrylovParams params)
    : h_(h), params_(params) {
  params_.validate();
}

void KrylovPropagator::evolve(Eigen::VectorXcd& psi, double t) {
  if (static_cast<std::size_t>(psi.size()) != h_.dim()) {
    throw UsageError("state dimension does not match the Hamiltonian");
  }
  if (!std::isfinite(t)) throw UsageError("evolution time must be finite");
  const double norm0 = psi.norm();
  if (norm0 == 0.0) return;
  double remaining = t;
  while (std::abs(remaining) > 0.0) {
    const double tau = std::copysign(std::min(params_.dt, std::abs(remaining)), remaining);
    const double done = step(psi, tau);
    // Guard against an endless tail of subnormal remainders.
    remaining = std::abs(remaining - done) < 1e-15 * std::max(1.0, std::abs(t)) ? 0.0 : remaining - done;
    const double drift = std::abs(psi.norm() - norm0);
    if (drift > kNormDrift * norm0) {
      psi *= norm0 / psi.norm();
      ++stats_.renormalizations;
      std::clog << "ringstar: krylov renormalized state (norm drift " << drift << ")\n";
    }
  }
}

double KrylovPropagator::step(Eigen::VectorXcd& psi, double tau) {
  const Eigen::Index n = psi.size();
  const int m = static_cast<int>(std::min<Eigen::Index>(params_.subspace_dim, n));
  if (basis_.rows() != n || basis_.cols() != m + 1) basis_.resize(n, m + 1);
  work_.resize(n);

  const double beta0 = psi.norm();
  basis_.col(0) = psi / beta0;
  Eigen::VectorXd alpha(m), beta(m);
  int used = m;
  double beta_last = 0.0;
  const double breakdown = 1e-12 * std::max(1.0, beta0);
  for (int j = 0; j < m; ++j) {
    h_.apply(std::span<const cplx>(basis_.col(j).data(), static_cast<std::size_t>(n)),
             std::span<cplx>(work_.data(), static_cast<std::size_t>(n)));
    alpha[j] = basis_.col(j).dot(work_).real();
    work_ -= alpha[j] * basis_.col(j);
    if (j > 0) work_ -= beta[j - 1] * basis_.col(j - 1);
    // Check against the whole basis; re-orthogonalize only when needed.
    Eigen::VectorXcd overlaps = basis_.leftCols(j + 1).adjoint() * work_;
    const double wnorm = work_.norm();
    if (overlaps.cwiseAbs().maxCoeff() > kOrthogonalityLoss * std::max(wnorm, 1e-300)) {
      work_ -= basis_.leftCols(j + 1) * overlaps;
      ++stats_.reorthogonalizations;
    }
    const double b = work_.norm();
    if (b < breakdown) {
      used = j + 1;
      beta_last = 0.0;
      ++stats_.happy_breakdowns;
      break;
    }
    beta[j] = b;
    beta_last = b;
    if (j + 1 < m + 1) basis_.col(j + 1) = work_ / b;
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
  if (used > 1) {
    tri.computeFromTridiagonal(alpha.head(used), beta.head(used - 1), Eigen::ComputeEigenvectors);
  }
  auto small_exp = [&](double t) {
    Eigen::VectorXcd c(used);
    if (used == 1) {
      c[0] = std::exp(cplx{0.0, -alpha[0] * t});
      return c;
    }
    const Eigen::MatrixXd& s = tri.eigenvectors();
    Eigen::VectorXcd phase(used);
    for (int k = 0; k < used; ++k) {
      phase[k] = std::exp(cplx{0.0, -tri.eigenvalues()[k] * t}) * s(0, k);
    }
    c = s.cast<cplx>() * phase;
    return c;
  };

  // The estimate is relative to the norm of psi. Steps whose estimate is at
  // the rounding level of the small exponential are accepted outright, so
  // short remainders never halve forever.
  const double floor = kRoundoffFloor * std::max(1.0, beta_last);
  double t = tau;
  Eigen::VectorXcd c = small_exp(t);
  double err = beta_last * std::abs(c[used - 1]);
  int halvings = 0;
  while (err > std::max(params_.tolerance * std::abs(t) / params_.dt, floor)) {
    if (++halvings > kMaxHalvings) throw NumericalError("Krylov step failed to meet the error tolerance");
    t *= 0.5;
    c = small_exp(t);
    err = beta_last * std::abs(c[used - 1]);
  }
  stats_.halvings += halvings;
  stats_.error_estimate += err;
  ++stats_.steps;
  psi = beta0 * (basis_.leftCols(used) * c);
  return t;
}

StateVector evolve_krylov(const ModelSpec& spec, const StateVector& psi, double t,
                          const KrylovParams& params, EvolutionStats* stats) {
  if (psi.n_sites() != spec.n_sites()) throw UsageError("state size does not match the model");
  const HamiltonianKernel kernel(spec);
  KrylovPropagator prop(kernel, params);
  Eigen::VectorXcd amps = psi.amplitudes();
  prop.evolve(amps, t);
  if (stats) *stats = prop.stats();
  return {psi.n_sites(), std::move(amps)};
}

}  // namespace ringstar
