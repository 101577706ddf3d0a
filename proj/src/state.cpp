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

#include "ringstar/state.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <random>

#include "ringstar/error.hpp"

namespace ringstar {
namespace {

constexpr int kMaxStateSites = 30;

void check_sites(int n_sites) {
  if (n_sites < 1 || n_sites > kMaxStateSites) {
    throw UsageError("state vectors need 1 <= n_sites <= 30, got " + std::to_string(n_sites));
  }
}

void put_u64(std::ostream& out, std::uint64_t v) {
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  out.write(reinterpret_cast<const char*>(b), 8);
}

std::uint64_t get_u64(std::istream& in) {
  unsigned char b[8];
  if (!in.read(reinterpret_cast<char*>(b), 8)) throw UsageError("truncated checkpoint");
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= std::uint64_t{b[i]} << (8 * i);
  return v;
}

}  // namespace

StateVector::StateVector(int n_sites) : n_sites_(n_sites) {
  check_sites(n_sites);
  amps_ = Eigen::VectorXcd::Zero(Eigen::Index{1} << n_sites);
  amps_[0] = 1.0;
}

StateVector::StateVector(int n_sites, Eigen::VectorXcd amplitudes)
    : n_sites_(n_sites), amps_(std::move(amplitudes)) {
  check_sites(n_sites);
  if (amps_.size() != (Eigen::Index{1} << n_sites)) {
    throw UsageError("amplitude count does not match 2^n_sites");
  }
}

StateVector StateVector::basis_state(int n_sites, std::uint64_t index) {
  StateVector s(n_sites);
  if (index >= s.dim()) throw UsageError("basis index out of range");
  s.amps_[0] = 0.0;
  s.amps_[static_cast<Eigen::Index>(index)] = 1.0;
  return s;
}

StateVector state_plus_y(int n_sites) {
  check_sites(n_sites);
  const Eigen::Index dim = Eigen::Index{1} << n_sites;
  Eigen::VectorXcd amps(dim);
  const double scale = std::pow(0.5, 0.5 * n_sites);
  static constexpr cplx kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  for (Eigen::Index b = 0; b < dim; ++b) {
    amps[b] = scale * kIPow[std::popcount(static_cast<std::uint64_t>(b)) % 4];
  }
  return {n_sites, std::move(amps)};
}

StateVector state_haar(int n_sites, std::uint64_t seed) {
  check_sites(n_sites);
  const Eigen::Index dim = Eigen::Index{1} << n_sites;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXcd amps(dim);
  for (Eigen::Index b = 0; b < dim; ++b) {
    const double re = normal(rng);
    const double im = normal(rng);
    amps[b] = {re, im};
  }
  amps /= amps.norm();
  return {n_sites, std::move(amps)};
}

void apply_pauli(std::span<cplx> psi, int site, Pauli p) {
  const auto dim = static_cast<std::uint64_t>(psi.size());
  if (site < 0 || (std::uint64_t{1} << site) >= dim) throw UsageError("site out of range");
  const std::uint64_t bit = std::uint64_t{1} << site;
  switch (p) {
    case Pauli::I:
      return;
    case Pauli::Z:
      for (std::uint64_t b = 0; b < dim; ++b) {
        if (b & bit) psi[static_cast<std::size_t>(b)] = -psi[static_cast<std::size_t>(b)];
      }
      return;
    case Pauli::X:
      for (std::uint64_t b = 0; b < dim; ++b) {
        if (!(b & bit)) std::swap(psi[static_cast<std::size_t>(b)], psi[static_cast<std::size_t>(b | bit)]);
      }
      return;
    case Pauli::Y:
      // Y|0> = i|1>, Y|1> = -i|0>
      for (std::uint64_t b = 0; b < dim; ++b) {
        if (b & bit) continue;
        const auto i0 = static_cast<std::size_t>(b);
        const auto i1 = static_cast<std::size_t>(b | bit);
        const cplx a0 = psi[i0], a1 = psi[i1];
        psi[i0] = cplx{0, -1} * a1;
        psi[i1] = cplx{0, 1} * a0;
      }
      return;
  }
}

void apply_pauli(Eigen::VectorXcd& psi, int site, Pauli p) {
  apply_pauli(std::span<cplx>(psi.data(), static_cast<std::size_t>(psi.size())), site, p);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  // splitmix64 applied to master + (index + 1) * golden gamma
  std::uint64_t z = master + (index + 1) * 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

void write_checkpoint(const std::filesystem::path& path, const StateVector& psi) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw UsageError("cannot open checkpoint for writing: " + path.string());
  put_u64(out, psi.dim());
  for (std::size_t i = 0; i < psi.dim(); ++i) {
    for (double part : {psi[i].real(), psi[i].imag()}) {
      put_u64(out, std::bit_cast<std::uint64_t>(part));
    }
  }
  if (!out) throw UsageError("failed writing checkpoint: " + path.string());
}

StateVector read_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open checkpoint: " + path.string());
  const std::uint64_t dim = get_u64(in);
  if (dim < 2 || !std::has_single_bit(dim)) throw UsageError("checkpoint dimension is not a power of two");
  const int n_sites = std::countr_zero(dim);
  check_sites(n_sites);
  Eigen::VectorXcd amps(static_cast<Eigen::Index>(dim));
  for (std::uint64_t i = 0; i < dim; ++i) {
    const double re = std::bit_cast<double>(get_u64(in));
    const double im = std::bit_cast<double>(get_u64(in));
    amps[static_cast<Eigen::Index>(i)] = {re, im};
  }
  if (in.peek() != std::char_traits<char>::eof()) throw UsageError("trailing bytes in checkpoint");
  return {n_sites, std::move(amps)};
}

}  // namespace ringstar
