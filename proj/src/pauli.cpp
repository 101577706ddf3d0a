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

#include "ringstar/pauli.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <sstream>

#include "ringstar/error.hpp"
#include "ringstar/numfmt.hpp"

namespace ringstar {
namespace {

constexpr std::array<cplx, 4> kIPowers = {cplx{1, 0}, cplx{0, 1}, cplx{-1, 0}, cplx{0, -1}};

int popcount(std::uint64_t v) { return std::popcount(v); }

std::uint64_t site_mask(int n_sites) {
  return n_sites == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_sites) - 1;
}

void check_site_count(int n_sites) {
  if (n_sites < 1 || n_sites > kMaxPauliSites) {
    throw UsageError("Pauli site count must be in [1, 64], got " + std::to_string(n_sites));
  }
}

// Product of two keys: returns the key and the extra phase power relative to
// the named-Pauli convention of each factor.
std::pair<PauliKey, int> key_product(const PauliKey& a, const PauliKey& b) {
  PauliKey c{a.x ^ b.x, a.z ^ b.z};
  int power = y_count(a) + y_count(b) + 2 * popcount(a.z & b.x) - y_count(c);
  return {c, ((power % 4) + 4) % 4};
}

bool keys_commute(const PauliKey& a, const PauliKey& b) {
  return (popcount((a.x & b.z) ^ (a.z & b.x)) & 1) == 0;
}

}  // namespace

char pauli_char(Pauli p) { return "IXYZ"[static_cast<int>(p)]; }

Pauli pauli_from_char(char c) {
  switch (c) {
    case 'I': case '_': return Pauli::I;
    case 'X': return Pauli::X;
    case 'Y': return Pauli::Y;
    case 'Z': return Pauli::Z;
    default: throw UsageError(std::string("not a Pauli character: '") + c + "'");
  }
}

PauliString::PauliString(int n_sites) : n_sites_(n_sites) { check_site_count(n_sites); }

PauliString::PauliString(int n_sites, std::uint64_t x_mask, std::uint64_t z_mask, int phase_power)
    : x_(x_mask), z_(z_mask), n_sites_(n_sites), phase_(((phase_power % 4) + 4) % 4) {
  check_site_count(n_sites);
  if (((x_mask | z_mask) & ~site_mask(n_sites)) != 0) {
    throw UsageError("Pauli mask has bits beyond the site count");
  }
}

PauliString PauliString::from_label(std::string_view label) {
  int power = 0;
  if (label.starts_with("+i")) { power = 1; label.remove_prefix(2); }
  else if (label.starts_with("-i")) { power = 3; label.remove_prefix(2); }
  else if (label.starts_with("i")) { power = 1; label.remove_prefix(1); }
  else if (label.starts_with("+")) { label.remove_prefix(1); }
  else if (label.starts_with("-")) { power = 2; label.remove_prefix(1); }
  const int n = static_cast<int>(label.size());
  check_site_count(n);
  std::uint64_t x = 0, z = 0;
  for (int s = 0; s < n; ++s) {
    Pauli p = pauli_from_char(label[s]);
    if (p == Pauli::X || p == Pauli::Y) x |= std::uint64_t{1} << s;
    if (p == Pauli::Z || p == Pauli::Y) z |= std::uint64_t{1} << s;
  }
  return {n, x, z, power};
}

PauliString PauliString::single(int n_sites, int site, Pauli p) {
  if (site < 0 || site >= n_sites) throw UsageError("site out of range");
  std::uint64_t bit = std::uint64_t{1} << site;
  std::uint64_t x = (p == Pauli::X || p == Pauli::Y) ? bit : 0;
  std::uint64_t z = (p == Pauli::Z || p == Pauli::Y) ? bit : 0;
  return {n_sites, x, z, 0};
}

cplx PauliString::phase() const { return kIPowers[phase_]; }

Pauli PauliString::at(int site) const {
  if (site < 0 || site >= n_sites_) throw UsageError("site out of range");
  bool xb = (x_ >> site) & 1, zb = (z_ >> site) & 1;
  if (xb && zb) return Pauli::Y;
  if (xb) return Pauli::X;
  if (zb) return Pauli::Z;
  return Pauli::I;
}

bool PauliString::acts_on(int site) const { return at(site) != Pauli::I; }

bool PauliString::commutes_with(const PauliString& other) const {
  if (other.n_sites_ != n_sites_) throw UsageError("Pauli strings on different site counts");
  return keys_commute(key(), other.key());
}

std::string PauliString::label() const {
  std::string s(static_cast<std::size_t>(n_sites_), 'I');
  for (int i = 0; i < n_sites_; ++i) s[i] = pauli_char(at(i));
  return s;
}

std::string PauliString::str() const {
  static constexpr std::array<const char*, 4> kPrefix = {"+", "+i", "-", "-i"};
  return kPrefix[phase_] + label();
}

PauliString multiply(const PauliString& a, const PauliString& b) {
  if (a.n_sites() != b.n_sites()) throw UsageError("Pauli strings on different site counts");
  auto [key, power] = key_product(a.key(), b.key());
  return {a.n_sites(), key.x, key.z, a.phase_power() + b.phase_power() + power};
}

// ---------------------------------------------------------------------------

PauliSum::PauliSum(int n_sites, double prune_threshold) : n_sites_(n_sites), prune_(prune_threshold) {
  check_site_count(n_sites);
  if (!(prune_threshold >= 0.0)) throw UsageError("pruning threshold must be nonnegative");
}

PauliSum::PauliSum(const PauliString& p, cplx coeff, double prune_threshold)
    : PauliSum(p.n_sites(), prune_threshold) {
  add(p, coeff);
}

void PauliSum::check_sites(int n) const {
  if (n != n_sites_) throw UsageError("Pauli operands on different site counts");
}

std::vector<std::pair<PauliKey, cplx>> PauliSum::sorted_terms() const {
  std::vector<std::pair<PauliKey, cplx>> out(terms_.begin(), terms_.end());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

PauliSum PauliSum::from_terms(int n_sites, TermMap terms, double prune_threshold) {
  PauliSum out(n_sites, prune_threshold);
  for (const auto& [k, c] : terms) {
    if (((k.x | k.z) & ~site_mask(n_sites)) != 0) {
      throw UsageError("Pauli key has bits beyond the site count");
    }
  }
  out.terms_ = std::move(terms);
  out.prune();
  return out;
}

void PauliSum::add(const PauliString& p, cplx coeff) {
  check_sites(p.n_sites());
  add(p.key(), coeff * p.phase());
}

void PauliSum::add(const PauliKey& key, cplx coeff) {
  if (((key.x | key.z) & ~site_mask(n_sites_)) != 0) {
    throw UsageError("Pauli key has bits beyond the site count");
  }
  auto [it, inserted] = terms_.try_emplace(key, coeff);
  if (!inserted) it->second += coeff;
  if (std::abs(it->second) < prune_) terms_.erase(it);
}

cplx PauliSum::coefficient(const PauliKey& key) const {
  auto it = terms_.find(key);
  return it == terms_.end() ? cplx{0.0} : it->second;
}

cplx PauliSum::coefficient(std::string_view label) const {
  PauliString p = PauliString::from_label(label);
  check_sites(p.n_sites());
  return coefficient(p.key()) / p.phase();
}

void PauliSum::prune() {
  std::erase_if(terms_, [this](const auto& kv) { return std::abs(kv.second) < prune_; });
}

PauliSum PauliSum::adjoint() const {
  // Named Paulis are Hermitian, so only the coefficients conjugate.
  PauliSum out(n_sites_, prune_);
  for (const auto& [k, c] : terms_) out.terms_.emplace(k, std::conj(c));
  return out;
}

bool PauliSum::is_hermitian(double tol) const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [tol](const auto& kv) { return std::abs(kv.second.imag()) <= tol; });
}

PauliSum& PauliSum::operator+=(const PauliSum& other) {
  check_sites(other.n_sites_);
  for (const auto& [k, c] : other.terms_) add(k, c);
  return *this;
}

PauliSum& PauliSum::operator-=(const PauliSum& other) {
  check_sites(other.n_sites_);
  for (const auto& [k, c] : other.terms_) add(k, -c);
  return *this;
}

PauliSum& PauliSum::operator*=(cplx s) {
  for (auto& kv : terms_) kv.second *= s;
  prune();
  return *this;
}

std::string PauliSum::to_text() const {
  std::string out;
  for (const auto& [k, c] : sorted_terms()) {
    PauliString p(n_sites_, k.x, k.z, 0);
    out += format_shortest(c.real());
    out += ' ';
    out += format_shortest(c.imag());
    out += ' ';
    out += p.label();
    out += '\n';
  }
  return out;
}

PauliSum PauliSum::from_text(std::string_view text, double prune_threshold) {
  std::istringstream in{std::string(text)};
  std::string line;
  int n_sites = -1;
  std::vector<std::pair<PauliString, cplx>> parsed;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string re, im, label, extra;
    if (!(ls >> re >> im >> label) || (ls >> extra)) {
      throw UsageError("malformed Pauli term on line " + std::to_string(line_no));
    }
    PauliString p = PauliString::from_label(label);
    if (n_sites < 0) n_sites = p.n_sites();
    if (p.n_sites() != n_sites) throw UsageError("inconsistent Pauli string lengths");
    parsed.emplace_back(p, cplx{parse_double(re), parse_double(im)});
  }
  if (n_sites < 0) throw UsageError("empty Pauli sum text has no site count");
  PauliSum out(n_sites, prune_threshold);
  for (const auto& [p, c] : parsed) out.add(p, c);
  return out;
}

PauliSum operator+(PauliSum a, const PauliSum& b) { return a += b; }
PauliSum operator-(PauliSum a, const PauliSum& b) { return a -= b; }
PauliSum operator*(PauliSum a, cplx s) { return a *= s; }
PauliSum operator*(cplx s, PauliSum a) { return a *= s; }

PauliSum operator*(const PauliSum& a, const PauliSum& b) {
  if (a.n_sites() != b.n_sites()) throw UsageError("Pauli operands on different site counts");
  PauliSum::TermMap acc;
  const auto bt = b.sorted_terms();
  for (const auto& [ka, ca] : a.sorted_terms()) {
    for (const auto& [kb, cb] : bt) {
      auto [kc, power] = key_product(ka, kb);
      acc[kc] += ca * cb * kIPowers[power];
    }
  }
  return PauliSum::from_terms(a.n_sites(), std::move(acc), a.prune_threshold());
}

namespace {

PauliSum commutator_capped(const PauliSum& a, const PauliSum& b, std::size_t max_terms, int order) {
  if (a.n_sites() != b.n_sites()) throw UsageError("Pauli operands on different site counts");
  PauliSum::TermMap acc;
  // Sorted iteration fixes the floating-point summation order.
  const auto at = a.sorted_terms();
  const auto bt = b.sorted_terms();
  for (const auto& [ka, ca] : at) {
    for (const auto& [kb, cb] : bt) {
      if (keys_commute(ka, kb)) continue;
      auto [kc, power] = key_product(ka, kb);
      acc[kc] += 2.0 * ca * cb * kIPowers[power];
    }
    if (acc.size() > max_terms) {
      throw TruncationError("nested commutator exceeded term cap at order " + std::to_string(order),
                            order - 1, acc.size());
    }
  }
  PauliSum out = PauliSum::from_terms(a.n_sites(), std::move(acc),
                                      std::max(a.prune_threshold(), b.prune_threshold()));
  if (out.size() > max_terms) {
    throw TruncationError("nested commutator exceeded term cap at order " + std::to_string(order),
                          order - 1, out.size());
  }
  return out;
}

}  // namespace

PauliSum commutator(const PauliSum& a, const PauliSum& b) {
  return commutator_capped(a, b, static_cast<std::size_t>(-1), 1);
}

std::vector<PauliSum> bch_nested(const PauliSum& h, const PauliSum& op, int order,
                                 const BchOptions& options) {
  if (order < 1) throw UsageError("commutator order must be >= 1");
  if (h.n_sites() != op.n_sites()) throw UsageError("Pauli operands on different site counts");
  std::vector<PauliSum> out;
  out.reserve(static_cast<std::size_t>(order));
  const PauliSum* prev = &op;
  for (int m = 1; m <= order; ++m) {
    out.push_back(commutator_capped(h, *prev, options.max_terms, m));
    prev = &out.back();
  }
  return out;
}

double support_weight(const PauliSum& op, int site) {
  if (site < 0 || site >= op.n_sites()) throw UsageError("site out of range");
  const std::uint64_t bit = std::uint64_t{1} << site;
  double w = 0.0;
  for (const auto& [k, c] : op.sorted_terms()) {
    if ((k.x | k.z) & bit) w += std::norm(c);
  }
  return w;
}

Eigen::MatrixXcd to_dense(const PauliSum& op) {
  const int n = op.n_sites();
  if (n > 14) throw ResourceError("dense Pauli matrix limited to 14 sites");
  const std::size_t dim = std::size_t{1} << n;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (const auto& [k, c] : op.sorted_terms()) {
    const cplx base = c * kIPowers[y_count(k) % 4];
    for (std::size_t b = 0; b < dim; ++b) {
      const std::size_t a = b ^ k.x;
      const double sign = (popcount(k.z & b) & 1) ? -1.0 : 1.0;
      m(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) += base * sign;
    }
  }
  return m;
}

}  // namespace ringstar
