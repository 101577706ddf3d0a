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

// Matrix-free Hamiltonian application.
//
// A Hamiltonian is compiled into a diagonal (all terms without X or Y
// factors) plus groups of terms sharing one flip mask. Application uses the
// gather form
//
//   out[a] = diag[a] * in[a] + sum_groups (sum_terms c_t * (-1)^{|z_t & b|}) * in[b],
//   b = a ^ flip,
//
// so each output amplitude is written by exactly one iteration. The OpenMP
// kernel and the serial reference therefore produce identical bits for any
// thread count.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "ringstar/model.hpp"
#include "ringstar/pauli.hpp"

namespace ringstar {

class HamiltonianKernel {
 public:
  explicit HamiltonianKernel(const ModelSpec& spec);
  explicit HamiltonianKernel(const PauliSum& op);

  int n_sites() const noexcept { return n_sites_; }
  std::size_t dim() const noexcept { return std::size_t{1} << n_sites_; }
  /// True when every matrix element is real.
  bool is_real() const noexcept { return real_; }

  /// out = H in, OpenMP-parallel over output amplitudes.
  void apply(std::span<const cplx> in, std::span<cplx> out) const;
  /// Same result computed by a single thread; kept as the test reference.
  void apply_serial(std::span<const cplx> in, std::span<cplx> out) const;

  Eigen::VectorXcd apply(const Eigen::VectorXcd& in) const;

  /// Dense matrix; `dense_real` throws UsageError if the operator is complex.
  Eigen::MatrixXcd dense() const;
  Eigen::MatrixXd dense_real() const;

  const std::vector<double>& diagonal_real() const noexcept { return diag_; }

  /// Calls fn(row, value) for every nonzero H(row, col) in column `col`.
  template <typename Fn>
  void for_each_in_column(std::uint64_t col, Fn&& fn) const {
    cplx d{diag_[col], diag_imag_.empty() ? 0.0 : diag_imag_[col]};
    if (d != cplx{0.0, 0.0}) fn(col, d);
    for (const auto& g : groups_) {
      cplx m{0.0, 0.0};
      for (const auto& t : g.terms) m += (__builtin_popcountll(t.z & col) & 1) ? -t.coeff : t.coeff;
      if (m != cplx{0.0, 0.0}) fn(col ^ g.flip, m);
    }
  }

 private:
  struct Term {
    std::uint64_t z;
    cplx coeff;
  };
  struct FlipGroup {
    std::uint64_t flip;
    std::vector<Term> terms;
    bool plain;  // one term with z = 0
  };

  void compile(const PauliSum& op);
  void check_spans(std::span<const cplx> in, std::span<cplx> out) const;
  cplx row_value(std::uint64_t a, std::span<const cplx> in) const;

  int n_sites_ = 0;
  bool real_ = true;
  std::vector<double> diag_;
  std::vector<double> diag_imag_;
  std::vector<FlipGroup> groups_;
};

}  // namespace ringstar
