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

#include "ringstar/kernel.hpp"

#include <algorithm>
#include <bit>
#include <map>

#include "ringstar/error.hpp"

namespace ringstar {
namespace {

constexpr int kMaxKernelSites = 30;

cplx i_power(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1, 0};
    case 1: return {0, 1};
    case 2: return {-1, 0};
    default: return {0, -1};
  }
}

}  // namespace

HamiltonianKernel::HamiltonianKernel(const ModelSpec& spec) { compile(build_pauli_sum(spec)); }

HamiltonianKernel::HamiltonianKernel(const PauliSum& op) { compile(op); }

void HamiltonianKernel::compile(const PauliSum& op) {
  n_sites_ = op.n_sites();
  if (n_sites_ > kMaxKernelSites) throw ResourceError("state vectors limited to 30 sites");
  const std::size_t n = dim();
  diag_.assign(n, 0.0);
  diag_imag_.assign(n, 0.0);
  std::map<std::uint64_t, std::vector<Term>> by_flip;
  for (const auto& [key, c] : op.sorted_terms()) {
    // Named Pauli with key (x, z) equals i^{y} X^x Z^z.
    const cplx coeff = c * i_power(y_count(key));
    if (key.x == 0) {
      for (std::size_t b = 0; b < n; ++b) {
        const double sign = (std::popcount(key.z & b) & 1) ? -1.0 : 1.0;
        diag_[b] += sign * coeff.real();
        diag_imag_[b] += sign * coeff.imag();
      }
    } else {
      by_flip[key.x].push_back({key.z, coeff});
    }
  }
  real_ = std::all_of(diag_imag_.begin(), diag_imag_.end(), [](double v) { return v == 0.0; });
  for (auto& [flip, terms] : by_flip) {
    for (const auto& t : terms) real_ = real_ && t.coeff.imag() == 0.0;
    const bool plain = terms.size() == 1 && terms.front().z == 0;
    groups_.push_back({flip, std::move(terms), plain});
  }
  if (real_) diag_imag_.clear();
}

void HamiltonianKernel::check_spans(std::span<const cplx> in, std::span<cplx> out) const {
  if (in.size() != dim() || out.size() != dim()) {
    throw UsageError("state dimension does not match the Hamiltonian");
  }
  if (in.data() == out.data()) throw UsageError("Hamiltonian apply cannot run in place");
}

inline cplx HamiltonianKernel::row_value(std::uint64_t a, std::span<const cplx> in) const {
  cplx acc = in[a] * diag_[a];
  if (!diag_imag_.empty()) acc += in[a] * cplx{0.0, diag_imag_[a]};
  for (const auto& g : groups_) {
    const std::uint64_t b = a ^ g.flip;
    if (g.plain) {
      acc += g.terms.front().coeff * in[b];
      continue;
    }
    cplx m{0.0, 0.0};
    for (const auto& t : g.terms) {
      m += (std::popcount(t.z & b) & 1) ? -t.coeff : t.coeff;
    }
    acc += m * in[b];
  }
  return acc;
}

void HamiltonianKernel::apply(std::span<const cplx> in, std::span<cplx> out) const {
  check_spans(in, out);
  const auto n = static_cast<std::int64_t>(dim());
#pragma omp parallel for schedule(static) if (n >= 4096)
  for (std::int64_t a = 0; a < n; ++a) {
    out[static_cast<std::size_t>(a)] = row_value(static_cast<std::uint64_t>(a), in);
  }
}

void HamiltonianKernel::apply_serial(std::span<const cplx> in, std::span<cplx> out) const {
  check_spans(in, out);
  const std::uint64_t n = dim();
  for (std::uint64_t a = 0; a < n; ++a) out[a] = row_value(a, in);
}

Eigen::VectorXcd HamiltonianKernel::apply(const Eigen::VectorXcd& in) const {
  Eigen::VectorXcd out(in.size());
  apply(std::span<const cplx>(in.data(), static_cast<std::size_t>(in.size())),
        std::span<cplx>(out.data(), static_cast<std::size_t>(out.size())));
  return out;
}

Eigen::MatrixXcd HamiltonianKernel::dense() const {
  if (n_sites_ > 13) throw ResourceError("dense complex Hamiltonian limited to 13 sites");
  const auto n = static_cast<Eigen::Index>(dim());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    m(a, a) += cplx{diag_[static_cast<std::size_t>(a)],
                    diag_imag_.empty() ? 0.0 : diag_imag_[static_cast<std::size_t>(a)]};
    for (const auto& g : groups_) {
      const auto b = static_cast<Eigen::Index>(static_cast<std::uint64_t>(a) ^ g.flip);
      for (const auto& t : g.terms) {
        m(a, b) += (std::popcount(t.z & static_cast<std::uint64_t>(b)) & 1) ? -t.coeff : t.coeff;
      }
    }
  }
  return m;
}

Eigen::MatrixXd HamiltonianKernel::dense_real() const {
  if (!real_) throw UsageError("Hamiltonian has complex matrix elements");
  if (n_sites_ > 14) throw ResourceError("dense Hamiltonian limited to 14 sites");
  const auto n = static_cast<Eigen::Index>(dim());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    m(a, a) += diag_[static_cast<std::size_t>(a)];
    for (const auto& g : groups_) {
      const auto b = static_cast<Eigen::Index>(static_cast<std::uint64_t>(a) ^ g.flip);
      for (const auto& t : g.terms) {
        const double c = t.coeff.real();
        m(a, b) += (std::popcount(t.z & static_cast<std::uint64_t>(b)) & 1) ? -c : c;
      }
    }
  }
  return m;
}

}  // namespace ringstar
