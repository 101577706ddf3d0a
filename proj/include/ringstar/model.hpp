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

// Ring-star Ising model parameters and the PauliSum form of the Hamiltonian
//
//   H = sum_{i=0}^{L-1} [ lambda s_i s_c - J Z_i Z_{i+1} + h X_i + g Z_i ]
//       + h_c X_c + g_c Z_c
//
// with s = Z (axis Z) or s = X (axis X, the transverse variant). Ring spins
// are sites 0..L-1 and the c-qubit is site L.

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ringstar/pauli.hpp"

namespace ringstar {

enum class CouplingAxis { Z, X };
enum class Boundary { Periodic, Open };

std::string to_string(CouplingAxis a);
std::string to_string(Boundary b);
CouplingAxis parse_axis(std::string_view s);
Boundary parse_boundary(std::string_view s);

struct ModelSpec {
  int L = 11;
  double lambda = 1.0;
  double J = 1.0;
  double h = 1.05;
  double g = 0.45;
  double h_c = 1.05;
  double g_c = 0.45;
  CouplingAxis axis = CouplingAxis::Z;
  Boundary boundary = Boundary::Periodic;

  int n_sites() const noexcept { return L + 1; }
  int cqubit() const noexcept { return L; }
  std::size_t dim() const noexcept { return std::size_t{1} << (L + 1); }

  /// Throws UsageError unless L >= 1, L + 1 <= 64 and every coupling is finite.
  void validate() const;

  /// J = h = g = h_c = g_c = 0, only the star coupling.
  static ModelSpec pure_star(int L, double lambda);
  /// Star graph with a single transverse field h_c on the c-qubit.
  static ModelSpec star(int L, double lambda, double h_c);

  friend bool operator==(const ModelSpec&, const ModelSpec&) = default;
};

/// Nearest-neighbour ring bonds (i, i+1 mod L). For L = 1 there are none; for
/// L = 2 with periodic boundary the pair (0,1) appears twice, as the sum
/// over i prescribes.
std::vector<std::pair<int, int>> ring_bonds(const ModelSpec& spec);

PauliSum build_pauli_sum(const ModelSpec& spec);

/// Flat key-value form: `key = value` per line for L, lambda, J, h, g, h_c,
/// g_c, axis, boundary. Numbers use the shortest round-trip representation.
std::string to_config(const ModelSpec& spec);
ModelSpec model_from_config(std::string_view text);

/// Sets one documented key from its text value. Returns false for unknown keys.
bool set_model_field(ModelSpec& spec, std::string_view key, std::string_view value);

}  // namespace ringstar
