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

#include "ringstar/sector.hpp"

#include <cmath>
#include <string>

#include "ringstar/error.hpp"
#include "ringstar/kernel.hpp"

namespace ringstar {

std::uint64_t translate(std::uint64_t config, int L) {
  const std::uint64_t mask = (std::uint64_t{1} << L) - 1;
  return ((config << 1) | (config >> (L - 1))) & mask;
}

std::uint64_t reflect(std::uint64_t config, int L) {
  std::uint64_t out = 0;
  for (int i = 0; i < L; ++i) {
    if ((config >> i) & 1) out |= std::uint64_t{1} << ((L - i) % L);
  }
  return out;
}

std::uint64_t orbit_minimum(std::uint64_t config, int L) {
  std::uint64_t best = config, cur = config;
  for (int s = 1; s < L; ++s) {
    cur = translate(cur, L);
    if (cur < best) best = cur;
  }
  return best;
}

namespace {

std::vector<std::uint64_t> orbit_of(std::uint64_t rep, int L) {
  std::vector<std::uint64_t> orbit{rep};
  for (std::uint64_t cur = translate(rep, L); cur != rep; cur = translate(cur, L)) orbit.push_back(cur);
  return orbit;
}

}  // namespace

Eigen::MatrixXd SectorBasis::ring_embedding() const {
  const auto full = static_cast<Eigen::Index>(std::uint64_t{1} << L);
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(full, static_cast<Eigen::Index>(states.size()));
  for (std::size_t a = 0; a < states.size(); ++a) {
    for (auto [cfg, amp] : states[a]) v(static_cast<Eigen::Index>(cfg), static_cast<Eigen::Index>(a)) = amp;
  }
  return v;
}

SectorBasis build_sector_basis(int L, int reflection_parity, Boundary boundary) {
  if (boundary != Boundary::Periodic) throw UsageError("symmetry sectors need a periodic ring");
  if (reflection_parity != 1 && reflection_parity != -1) throw UsageError("reflection parity must be +1 or -1");
  if (L < 1 || L > 24) throw UsageError("sector basis supports 1 <= L <= 24");
  SectorBasis basis;
  basis.L = L;
  basis.reflection_parity = reflection_parity;
  const std::uint64_t n_configs = std::uint64_t{1} << L;
  for (std::uint64_t cfg = 0; cfg < n_configs; ++cfg) {
    if (orbit_minimum(cfg, L) != cfg) continue;
    const std::uint64_t partner = orbit_minimum(reflect(cfg, L), L);
    if (partner < cfg) continue;  // emitted with its partner
    const auto orbit = orbit_of(cfg, L);
    const double orbit_amp = 1.0 / std::sqrt(static_cast<double>(orbit.size()));
    std::vector<std::pair<std::uint64_t, double>> state;
    if (partner == cfg) {
      if (reflection_parity == -1) continue;
      for (auto c : orbit) state.emplace_back(c, orbit_amp);
    } else {
      const double amp = orbit_amp / std::sqrt(2.0);
      for (auto c : orbit) state.emplace_back(c, amp);
      for (auto c : orbit_of(partner, L)) state.emplace_back(c, reflection_parity * amp);
    }
    basis.representatives.push_back(cfg);
    basis.states.push_back(std::move(state));
  }
  return basis;
}

Eigen::MatrixXd sector_hamiltonian(const ModelSpec& spec, const SectorBasis& basis) {
  spec.validate();
  if (spec.boundary != Boundary::Periodic) throw UsageError("sector Hamiltonian needs periodic boundary");
  if (spec.L != basis.L) throw UsageError("sector basis and model have different ring sizes");
  if (!basis.includes_cqubit) throw UsageError("sector Hamiltonian needs the c-qubit in the basis");
  const int L = spec.L;
  const std::uint64_t n_ring = std::uint64_t{1} << L;
  // Ring configuration -> (basis index, amplitude) for this sector.
  std::vector<std::int64_t> index(n_ring, -1);
  std::vector<double> amplitude(n_ring, 0.0);
  for (std::size_t a = 0; a < basis.states.size(); ++a) {
    for (auto [cfg, amp] : basis.states[a]) {
      index[cfg] = static_cast<std::int64_t>(a);
      amplitude[cfg] = amp;
    }
  }
  const HamiltonianKernel kernel(spec);
  if (!kernel.is_real()) throw UsageError("sector Hamiltonian needs a real Hamiltonian");
  const auto dim = static_cast<Eigen::Index>(basis.dimension());
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  const std::uint64_t ring_mask = n_ring - 1;
  for (std::size_t b = 0; b < basis.states.size(); ++b) {
    for (std::uint64_t cb = 0; cb < 2; ++cb) {
      const auto col = static_cast<Eigen::Index>(2 * b + cb);
      for (auto [cfg, amp] : basis.states[b]) {
        kernel.for_each_in_column(cfg | (cb << L), [&](std::uint64_t row, cplx value) {
          const std::uint64_t ring = row & ring_mask;
          const std::int64_t a = index[ring];
          if (a < 0) return;
          const auto r = static_cast<Eigen::Index>(2 * a + static_cast<std::int64_t>(row >> L));
          h(r, col) += amplitude[ring] * value.real() * amp;
        });
      }
    }
  }
  return h;
}

}  // namespace ringstar
