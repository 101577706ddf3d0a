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

// Zero-momentum, reflection-resolved basis of the ring and the corresponding
// block of the ring-star Hamiltonian.
//
// Translation T maps ring site i to i+1 (mod L); reflection R maps site i to
// (L - i) mod L. A k = 0 state is a uniform superposition over a translation
// orbit. When R maps an orbit onto itself the orbit state is R-even and only
// lives in the parity +1 sector; otherwise orbit pairs {O, R(O)} give one
// state in each sector, (|O> +- |R O>)/sqrt(2). The c-qubit is not reduced:
// every ring state is tensored with both c-qubit basis states.

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ringstar/model.hpp"

namespace ringstar {

struct SectorBasis {
  int L = 0;
  int momentum_k = 0;
  int reflection_parity = 1;
  bool includes_cqubit = true;

  /// Smallest configuration (as an integer, bit i = ring site i) of each
  /// basis state's translation orbit, ascending.
  std::vector<std::uint64_t> representatives;
  /// Normalized ring vectors: (configuration, amplitude) pairs.
  std::vector<std::vector<std::pair<std::uint64_t, double>>> states;

  std::size_t ring_dimension() const noexcept { return states.size(); }
  /// Ring dimension, doubled when the c-qubit is included.
  std::size_t dimension() const noexcept { return states.size() * (includes_cqubit ? 2 : 1); }

  /// Isometry from the sector into the ring Hilbert space (2^L x ring_dim).
  Eigen::MatrixXd ring_embedding() const;
};

/// Smallest element of the translation orbit of `config` on an L-site ring.
std::uint64_t orbit_minimum(std::uint64_t config, int L);
std::uint64_t reflect(std::uint64_t config, int L);
std::uint64_t translate(std::uint64_t config, int L);

/// Throws UsageError for open boundaries, parity other than +-1, or L outside
/// [1, 24].
SectorBasis build_sector_basis(int L, int reflection_parity, Boundary boundary = Boundary::Periodic);

/// Real symmetric block with index 2 * ring_state + c_bit.
Eigen::MatrixXd sector_hamiltonian(const ModelSpec& spec, const SectorBasis& basis);

}  // namespace ringstar
