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

#include "ringstar/linalg.hpp"

#include <cstdlib>
#include <string>

#include <lapacke.h>

#include "ringstar/error.hpp"

namespace ringstar {
namespace {

void check_square(Eigen::Index rows, Eigen::Index cols) {
  if (rows != cols) throw UsageError("eigensolver needs a square matrix");
  if (rows == 0) throw UsageError("eigensolver needs a non-empty matrix");
}

Eigen::VectorXd symmetric_values(Eigen::MatrixXd m, char jobz, Eigen::MatrixXd* vectors) {
  check_square(m.rows(), m.cols());
  const auto n = static_cast<lapack_int>(m.rows());
  Eigen::VectorXd w(n);
  lapack_int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, jobz, 'L', n, m.data(), n, w.data());
  if (info != 0) throw NumericalError("dsyevd failed with info " + std::to_string(info));
  if (vectors) *vectors = std::move(m);
  return w;
}

Eigen::VectorXd hermitian_values(Eigen::MatrixXcd m, char jobz, Eigen::MatrixXcd* vectors) {
  check_square(m.rows(), m.cols());
  const auto n = static_cast<lapack_int>(m.rows());
  Eigen::VectorXd w(n);
  lapack_int info = LAPACKE_zheevd(LAPACK_COL_MAJOR, jobz, 'L', n,
                                   reinterpret_cast<lapack_complex_double*>(m.data()), n, w.data());
  if (info != 0) throw NumericalError("zheevd failed with info " + std::to_string(info));
  if (vectors) *vectors = std::move(m);
  return w;
}

}  // namespace

DenseLimits DenseLimits::from_env() {
  DenseLimits limits;
  if (const char* env = std::getenv("RINGSTAR_MAX_DENSE_DIM")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0' || v == 0) {
      throw UsageError("RINGSTAR_MAX_DENSE_DIM must be a positive integer");
    }
    limits.max_dense_dim = static_cast<std::size_t>(v);
  }
  return limits;
}

void DenseLimits::check_dense(std::size_t dim, const char* what) const {
  if (dim > max_dense_dim) {
    throw ResourceError(std::string(what) + ": dimension " + std::to_string(dim) +
                        " exceeds the dense cap " + std::to_string(max_dense_dim));
  }
}

SymmetricEigen eigh(Eigen::MatrixXd m) {
  SymmetricEigen out;
  out.values = symmetric_values(std::move(m), 'V', &out.vectors);
  return out;
}

HermitianEigen eigh(Eigen::MatrixXcd m) {
  HermitianEigen out;
  out.values = hermitian_values(std::move(m), 'V', &out.vectors);
  return out;
}

Eigen::VectorXd full_spectrum(const Eigen::MatrixXd& m, const DenseLimits& limits) {
  if (static_cast<std::size_t>(m.rows()) > limits.max_spectrum_dim) {
    throw ResourceError("matrix dimension exceeds the spectrum cap");
  }
  return symmetric_values(m, 'N', nullptr);
}

Eigen::VectorXd full_spectrum(const Eigen::MatrixXcd& m, const DenseLimits& limits) {
  if (static_cast<std::size_t>(m.rows()) > limits.max_spectrum_dim) {
    throw ResourceError("matrix dimension exceeds the spectrum cap");
  }
  return hermitian_values(m, 'N', nullptr);
}

}  // namespace ringstar
