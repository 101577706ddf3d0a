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

// Dense Hermitian eigensolvers (LAPACK divide and conquer) and the dense
// resource caps.

#pragma once

#include <cstddef>

#include <Eigen/Dense>

namespace ringstar {

/// Caps for dense eigendecomposition-based methods.
struct DenseLimits {
  /// Largest Hilbert-space dimension handled by dense propagation and exact
  /// traces. Default 2^12 (L + 1 = 12).
  std::size_t max_dense_dim = std::size_t{1} << 12;
  /// Largest matrix passed to full_spectrum.
  std::size_t max_spectrum_dim = 5000;

  /// Defaults, with max_dense_dim overridden by RINGSTAR_MAX_DENSE_DIM when set.
  static DenseLimits from_env();

  /// Throws ResourceError when `dim` exceeds max_dense_dim.
  void check_dense(std::size_t dim, const char* what) const;
};

struct SymmetricEigen {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // columns
};

struct HermitianEigen {
  Eigen::VectorXd values;
  Eigen::MatrixXcd vectors;
};

/// Full eigendecomposition of a real symmetric matrix (lower triangle read).
SymmetricEigen eigh(Eigen::MatrixXd m);
HermitianEigen eigh(Eigen::MatrixXcd m);

/// Ascending eigenvalues only. Throws ResourceError above the spectrum cap.
Eigen::VectorXd full_spectrum(const Eigen::MatrixXd& m, const DenseLimits& limits = {});
Eigen::VectorXd full_spectrum(const Eigen::MatrixXcd& m, const DenseLimits& limits = {});

}  // namespace ringstar
