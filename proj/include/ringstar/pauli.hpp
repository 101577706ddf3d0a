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

// Phase-tracked Pauli operators over up to 64 qubits in symplectic form.
//
// A PauliString stores an x mask, a z mask and a phase i^k. The masks name a
// tensor product of single-site Paulis: site s carries X if only x bit s is
// set, Z if only z bit s is set and Y if both are set. The phase multiplies
// that *named* product, with Y the Hermitian matrix [[0,-i],[i,0]] = i·X·Z.
// So "+Y" is Hermitian with phase power 0, and a string is Hermitian exactly
// when its phase is ±1.
//
// Operators use the σ convention (eigenvalues ±1). Site s corresponds to bit
// s of a computational-basis index, with bit value 0 the +1 eigenstate of Z.

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace ringstar {

using cplx = std::complex<double>;

inline constexpr int kMaxPauliSites = 64;

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char pauli_char(Pauli p);
Pauli pauli_from_char(char c);

/// Canonical term key of a PauliSum: the masks without any phase.
struct PauliKey {
  std::uint64_t x = 0;
  std::uint64_t z = 0;

  friend bool operator==(const PauliKey&, const PauliKey&) = default;
  friend auto operator<=>(const PauliKey&, const PauliKey&) = default;
};

struct PauliKeyHash {
  std::size_t operator()(const PauliKey& k) const noexcept {
    std::uint64_t h = k.x * 0x9E3779B97F4A7C15ULL;
    h ^= k.z + 0x7F4A7C159E3779B9ULL + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h);
  }
};

/// Number of sites where the key acts as Y.
inline int y_count(const PauliKey& k) { return __builtin_popcountll(k.x & k.z); }

class PauliString {
 public:
  /// Identity on n_sites qubits.
  explicit PauliString(int n_sites);
  PauliString(int n_sites, std::uint64_t x_mask, std::uint64_t z_mask, int phase_power = 0);

  /// Parses "IXYZ" (site 0 first), optionally prefixed by one of
  /// "+", "-", "i", "+i", "-i".
  static PauliString from_label(std::string_view label);
  static PauliString single(int n_sites, int site, Pauli p);

  int n_sites() const noexcept { return n_sites_; }
  std::uint64_t x_mask() const noexcept { return x_; }
  std::uint64_t z_mask() const noexcept { return z_; }
  PauliKey key() const noexcept { return {x_, z_}; }
  /// Phase is i^phase_power(), phase_power() in 0..3.
  int phase_power() const noexcept { return phase_; }
  cplx phase() const;

  Pauli at(int site) const;
  bool is_identity() const noexcept { return x_ == 0 && z_ == 0 && phase_ == 0; }
  bool is_hermitian() const noexcept { return (phase_ & 1) == 0; }
  bool acts_on(int site) const;
  bool commutes_with(const PauliString& other) const;

  PauliString with_phase_power(int k) const { return {n_sites_, x_, z_, k}; }

  /// Site labels only, e.g. "IXZY".
  std::string label() const;
  /// Phase prefix plus label, e.g. "-iXZ".
  std::string str() const;

  friend bool operator==(const PauliString&, const PauliString&) = default;

 private:
  std::uint64_t x_ = 0;
  std::uint64_t z_ = 0;
  int n_sites_ = 0;
  int phase_ = 0;
};

/// Exact product a·b including the accumulated phase.
PauliString multiply(const PauliString& a, const PauliString& b);
inline PauliString operator*(const PauliString& a, const PauliString& b) { return multiply(a, b); }

/// Weighted sum of Pauli strings. Keys are phase-free; a string's phase is
/// folded into its coefficient on insertion. Terms whose magnitude falls
/// below the pruning threshold are dropped.
class PauliSum {
 public:
  static constexpr double kDefaultPrune = 1e-14;
  using TermMap = std::unordered_map<PauliKey, cplx, PauliKeyHash>;

  explicit PauliSum(int n_sites, double prune_threshold = kDefaultPrune);
  PauliSum(const PauliString& p, cplx coeff = 1.0, double prune_threshold = kDefaultPrune);

  int n_sites() const noexcept { return n_sites_; }
  double prune_threshold() const noexcept { return prune_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool empty() const noexcept { return terms_.empty(); }
  const TermMap& terms() const noexcept { return terms_; }

  /// Terms ordered by key, for deterministic iteration and printing.
  std::vector<std::pair<PauliKey, cplx>> sorted_terms() const;

  /// Builds from an accumulated term map, pruning once at the end.
  static PauliSum from_terms(int n_sites, TermMap terms, double prune_threshold = kDefaultPrune);

  void add(const PauliString& p, cplx coeff);
  void add(const PauliKey& key, cplx coeff);
  cplx coefficient(const PauliKey& key) const;
  cplx coefficient(std::string_view label) const;

  /// Drops terms below the pruning threshold.
  void prune();

  PauliSum adjoint() const;
  bool is_hermitian(double tol = 0.0) const;

  PauliSum& operator+=(const PauliSum& other);
  PauliSum& operator-=(const PauliSum& other);
  PauliSum& operator*=(cplx s);

  /// `<coeff_re> <coeff_im> <string>` per line, sorted by key.
  std::string to_text() const;
  static PauliSum from_text(std::string_view text, double prune_threshold = kDefaultPrune);

 private:
  void check_sites(int n) const;

  TermMap terms_;
  int n_sites_ = 0;
  double prune_ = kDefaultPrune;
};

PauliSum operator+(PauliSum a, const PauliSum& b);
PauliSum operator-(PauliSum a, const PauliSum& b);
PauliSum operator*(PauliSum a, cplx s);
PauliSum operator*(cplx s, PauliSum a);
PauliSum operator*(const PauliSum& a, const PauliSum& b);

/// [a, b] = ab - ba. Commuting pairs are skipped rather than cancelled.
PauliSum commutator(const PauliSum& a, const PauliSum& b);

struct BchOptions {
  std::size_t max_terms = 1'000'000;
};

/// Nested commutators [h, op]_1 .. [h, op]_order with
/// [h, op]_m = [h, [h, op]_{m-1}], [h, op]_0 = op.
/// Throws TruncationError when an order would exceed `max_terms`.
std::vector<PauliSum> bch_nested(const PauliSum& h, const PauliSum& op, int order,
                                 const BchOptions& options = {});

/// Sum of |c|^2 over terms acting nontrivially on `site`.
double support_weight(const PauliSum& op, int site);

/// Dense 2^n x 2^n matrix. Intended for small n.
Eigen::MatrixXcd to_dense(const PauliSum& op);

}  // namespace ringstar
