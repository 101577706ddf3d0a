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

#include "ringstar/model.hpp"

#include <cmath>
#include <sstream>

#include "ringstar/error.hpp"
#include "ringstar/kv_config.hpp"
#include "ringstar/numfmt.hpp"

namespace ringstar {

std::string to_string(CouplingAxis a) { return a == CouplingAxis::Z ? "Z" : "X"; }
std::string to_string(Boundary b) { return b == Boundary::Periodic ? "periodic" : "open"; }

CouplingAxis parse_axis(std::string_view s) {
  if (s == "Z" || s == "z") return CouplingAxis::Z;
  if (s == "X" || s == "x") return CouplingAxis::X;
  throw UsageError("coupling axis must be Z or X, got '" + std::string(s) + "'");
}

Boundary parse_boundary(std::string_view s) {
  if (s == "periodic") return Boundary::Periodic;
  if (s == "open") return Boundary::Open;
  throw UsageError("boundary must be periodic or open, got '" + std::string(s) + "'");
}

void ModelSpec::validate() const {
  if (L < 1) throw UsageError("ring size L must be >= 1");
  if (L + 1 > kMaxPauliSites) throw UsageError("ring size L must be <= 63");
  for (double v : {lambda, J, h, g, h_c, g_c}) {
    if (!std::isfinite(v)) throw UsageError("model couplings must be finite");
  }
}

ModelSpec ModelSpec::pure_star(int L, double lambda) {
  ModelSpec s;
  s.L = L;
  s.lambda = lambda;
  s.J = s.h = s.g = s.h_c = s.g_c = 0.0;
  return s;
}

ModelSpec ModelSpec::star(int L, double lambda, double h_c) {
  ModelSpec s = pure_star(L, lambda);
  s.h_c = h_c;
  return s;
}

std::vector<std::pair<int, int>> ring_bonds(const ModelSpec& spec) {
  std::vector<std::pair<int, int>> bonds;
  if (spec.L < 2) return bonds;
  const int n_bonds = spec.boundary == Boundary::Periodic ? spec.L : spec.L - 1;
  for (int i = 0; i < n_bonds; ++i) bonds.emplace_back(i, (i + 1) % spec.L);
  return bonds;
}

PauliSum build_pauli_sum(const ModelSpec& spec) {
  spec.validate();
  const int n = spec.n_sites();
  const int c = spec.cqubit();
  const Pauli star_axis = spec.axis == CouplingAxis::Z ? Pauli::Z : Pauli::X;
  PauliSum h(n);
  auto site = [n](int s, Pauli p) { return PauliString::single(n, s, p); };
  if (spec.lambda != 0.0) {
    for (int i = 0; i < spec.L; ++i) h.add(site(i, star_axis) * site(c, star_axis), spec.lambda);
  }
  if (spec.J != 0.0) {
    for (auto [a, b] : ring_bonds(spec)) h.add(site(a, Pauli::Z) * site(b, Pauli::Z), -spec.J);
  }
  for (int i = 0; i < spec.L; ++i) {
    if (spec.h != 0.0) h.add(site(i, Pauli::X), spec.h);
    if (spec.g != 0.0) h.add(site(i, Pauli::Z), spec.g);
  }
  if (spec.h_c != 0.0) h.add(site(c, Pauli::X), spec.h_c);
  if (spec.g_c != 0.0) h.add(site(c, Pauli::Z), spec.g_c);
  return h;
}

std::string to_config(const ModelSpec& spec) {
  std::ostringstream out;
  out << "L = " << spec.L << '\n'
      << "lambda = " << format_shortest(spec.lambda) << '\n'
      << "J = " << format_shortest(spec.J) << '\n'
      << "h = " << format_shortest(spec.h) << '\n'
      << "g = " << format_shortest(spec.g) << '\n'
      << "h_c = " << format_shortest(spec.h_c) << '\n'
      << "g_c = " << format_shortest(spec.g_c) << '\n'
      << "axis = " << to_string(spec.axis) << '\n'
      << "boundary = " << to_string(spec.boundary) << '\n';
  return out.str();
}

bool set_model_field(ModelSpec& spec, std::string_view key, std::string_view value) {
  if (key == "L") {
    spec.L = static_cast<int>(parse_int(value));
  } else if (key == "lambda") {
    spec.lambda = parse_double(value);
  } else if (key == "J") {
    spec.J = parse_double(value);
  } else if (key == "h") {
    spec.h = parse_double(value);
  } else if (key == "g") {
    spec.g = parse_double(value);
  } else if (key == "h_c") {
    spec.h_c = parse_double(value);
  } else if (key == "g_c") {
    spec.g_c = parse_double(value);
  } else if (key == "axis") {
    spec.axis = parse_axis(value);
  } else if (key == "boundary") {
    spec.boundary = parse_boundary(value);
  } else {
    return false;
  }
  return true;
}

ModelSpec model_from_config(std::string_view text) {
  ModelSpec spec;
  for (const auto& entry : parse_kv(text).entries) {
    if (!set_model_field(spec, entry.key, entry.scalar())) {
      throw UsageError("unknown model key '" + entry.key + "'");
    }
  }
  spec.validate();
  return spec;
}

}  // namespace ringstar
