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

// Dense reference propagation through a full eigendecomposition of H.

#pragma once

#include <Eigen/Dense>

#include "ringstar/linalg.hpp"
#include "ringstar/model.hpp"
#include "ringstar/state.hpp"

namespace ringstar {

/// Real-symmetric H = Q diag(E) Q^T.
class SpectralPropagator {
 public:
  explicit SpectralPropagator(const Eigen::MatrixXd& h);
  /// Throws ResourceError when 2^(L+1) exceeds the dense cap.
  static SpectralPropagator for_model(const ModelSpec& spec,
                                      const DenseLimits& limits = DenseLimits::from_env());

  Eigen::Index dim() const noexcept { return energies_.size(); }
  const Eigen::VectorXd& energies() const noexcept { return energies_; }
  const Eigen::MatrixXd& vectors() const noexcept { return q_; }

  /// Q^T x and Q x for a block of complex columns.
  Eigen::MatrixXcd to_eigenbasis(const Eigen::MatrixXcd& x) const;
  Eigen::MatrixXcd from_eigenbasis(const Eigen::MatrixXcd& x) const;

  /// Q^T A Q for a real operator.
  Eigen::MatrixXd transform(const Eigen::MatrixXd& a) const;

  void evolve(Eigen::VectorXcd& psi, double t) const;

 private:
  Eigen::VectorXd energies_;
  Eigen::MatrixXd q_;
};

/// A * X for real A and complex X, as two real products.
Eigen::MatrixXcd real_times(const Eigen::MatrixXd& a, const Eigen::MatrixXcd& x);
Eigen::MatrixXcd real_transpose_times(const Eigen::MatrixXd& a, const Eigen::MatrixXcd& x);

StateVector evolve_dense(const ModelSpec& spec, const StateVector& psi, double t,
                         const DenseLimits& limits = DenseLimits::from_env());

}  // namespace ringstar
