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

#include "ringstar/dynamics.hpp"

#include <cmath>

#include "ringstar/error.hpp"
#include "ringstar/kernel.hpp"

namespace ringstar {
namespace {

Eigen::MatrixXd stack(const Eigen::MatrixXcd& x) {
  Eigen::MatrixXd r(x.rows(), 2 * x.cols());
  r.leftCols(x.cols()) = x.real();
  r.rightCols(x.cols()) = x.imag();
  return r;
}

Eigen::MatrixXcd unstack(const Eigen::MatrixXd& r) {
  const Eigen::Index k = r.cols() / 2;
  Eigen::MatrixXcd x(r.rows(), k);
  x.real() = r.leftCols(k);
  x.imag() = r.rightCols(k);
  return x;
}

}  // namespace

Eigen::MatrixXcd real_times(const Eigen::MatrixXd& a, const Eigen::MatrixXcd& x) {
  Eigen::MatrixXd r = a * stack(x);
  return unstack(r);
}

Eigen::MatrixXcd real_transpose_times(const Eigen::MatrixXd& a, const Eigen::MatrixXcd& x) {
  Eigen::MatrixXd r = a.transpose() * stack(x);
  return unstack(r);
}

SpectralPropagator::SpectralPropagator(const Eigen::MatrixXd& h) {
  if (h.rows() != h.cols()) throw UsageError("Hamiltonian matrix must be square");
  SymmetricEigen e = eigh(h);
  energies_ = std::move(e.values);
  q_ = std::move(e.vectors);
}

SpectralPropagator SpectralPropagator::for_model(const ModelSpec& spec, const DenseLimits& limits) {
  spec.validate();
  limits.check_dense(spec.dim(), "dense propagation");
  return SpectralPropagator(HamiltonianKernel(spec).dense_real());
}

Eigen::MatrixXcd SpectralPropagator::to_eigenbasis(const Eigen::MatrixXcd& x) const {
  return real_transpose_times(q_, x);
}

Eigen::MatrixXcd SpectralPropagator::from_eigenbasis(const Eigen::MatrixXcd& x) const {
  return real_times(q_, x);
}

Eigen::MatrixXd SpectralPropagator::transform(const Eigen::MatrixXd& a) const {
  Eigen::MatrixXd tmp = a * q_;
  return q_.transpose() * tmp;
}

void SpectralPropagator::evolve(Eigen::VectorXcd& psi, double t) const {
  if (psi.size() != dim()) throw UsageError("state dimension does not match the propagator");
  Eigen::VectorXcd c = to_eigenbasis(psi);
  for (Eigen::Index k = 0; k < c.size(); ++k) c[k] *= std::exp(cplx{0.0, -energies_[k] * t});
  psi = from_eigenbasis(c);
}

StateVector evolve_dense(const ModelSpec& spec, const StateVector& psi, double t,
                         const DenseLimits& limits) {
  if (psi.n_sites() != spec.n_sites()) throw UsageError("state size does not match the model");
  if (t == 0.0) return psi;
  const auto prop = SpectralPropagator::for_model(spec, limits);
  Eigen::VectorXcd amps = psi.amplitudes();
  prop.evolve(amps, t);
  return {psi.n_sites(), std::move(amps)};
}

}  // namespace ringstar
