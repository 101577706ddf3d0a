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

// State vectors over L + 1 qubits. Bit b of an amplitude index is the z state
// of site b, with bit value 0 the +1 eigenstate.

#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>

#include <Eigen/Dense>

#include "ringstar/pauli.hpp"

namespace ringstar {

class StateVector {
 public:
  /// |0...0> on n_sites qubits.
  explicit StateVector(int n_sites);
  StateVector(int n_sites, Eigen::VectorXcd amplitudes);

  static StateVector basis_state(int n_sites, std::uint64_t index);

  int n_sites() const noexcept { return n_sites_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(amps_.size()); }

  const Eigen::VectorXcd& amplitudes() const noexcept { return amps_; }
  Eigen::VectorXcd& amplitudes() noexcept { return amps_; }
  cplx operator[](std::size_t i) const { return amps_[static_cast<Eigen::Index>(i)]; }

  std::span<const cplx> span() const noexcept { return {amps_.data(), dim()}; }
  std::span<cplx> span() noexcept { return {amps_.data(), dim()}; }

  double norm() const { return amps_.norm(); }

 private:
  int n_sites_ = 0;
  Eigen::VectorXcd amps_;
};

/// Product state with every qubit in (|0> + i|1>)/sqrt(2).
StateVector state_plus_y(int n_sites);

/// Haar-random state: i.i.d. complex Gaussians, normalized. Deterministic per
/// seed (std::mt19937_64 and std::normal_distribution).
StateVector state_haar(int n_sites, std::uint64_t seed);

/// Applies a single-site Pauli in place.
void apply_pauli(std::span<cplx> psi, int site, Pauli p);
void apply_pauli(Eigen::VectorXcd& psi, int site, Pauli p);

/// Per-job seed: splitmix64 of master + (index + 1) * 0x9e3779b97f4a7c15.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

/// Checkpoint: little-endian uint64 dimension, then interleaved (re, im)
/// little-endian doubles.
void write_checkpoint(const std::filesystem::path& path, const StateVector& psi);
StateVector read_checkpoint(const std::filesystem::path& path);

}  // namespace ringstar
