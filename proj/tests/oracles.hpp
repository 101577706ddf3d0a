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

// Dense reference constructions for tests, built from 2x2 matrices and
// Kronecker products only.

#pragma once

#include <complex>
#include <random>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "ringstar/model.hpp"

namespace oracle {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;

inline Mat pauli(char c) {
  Mat m(2, 2);
  switch (c) {
    case 'X':
      m << 0, 1, 1, 0;
      break;
    case 'Y':
      m << 0, cplx(0, -1), cplx(0, 1), 0;
      break;
    case 'Z':
      m << 1, 0, 0, -1;
      break;
    default:
      m.setIdentity();
  }
  return m;
}

inline Mat kron(const Mat& a, const Mat& b) {
  Mat r(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  }
  return r;
}

/// Operator from a label with site 0 first. Site 0 is the least significant
/// bit of the basis index, so it is the rightmost Kronecker factor.
inline Mat string_matrix(const std::string& label) {
  Mat m = Mat::Identity(1, 1);
  for (char c : label) m = kron(pauli(c), m);
  return m;
}

inline Mat site_op(int n, int site, char c) {
  std::string label(static_cast<std::size_t>(n), 'I');
  label[static_cast<std::size_t>(site)] = c;
  return string_matrix(label);
}

inline Mat two_site_op(int n, int a, char ca, int b, char cb) {
  std::string label(static_cast<std::size_t>(n), 'I');
  label[static_cast<std::size_t>(a)] = ca;
  label[static_cast<std::size_t>(b)] = cb;
  return string_matrix(label);
}

/// The model Hamiltonian written out term by term.
inline Mat hamiltonian(const ringstar::ModelSpec& s) {
  const int n = s.L + 1;
  const int c = s.L;
  const char ax = s.axis == ringstar::CouplingAxis::Z ? 'Z' : 'X';
  Mat h = Mat::Zero(1 << n, 1 << n);
  for (int i = 0; i < s.L; ++i) {
    h += s.lambda * two_site_op(n, i, ax, c, ax);
    h += s.h * site_op(n, i, 'X') + s.g * site_op(n, i, 'Z');
    const bool last = i + 1 == s.L;
    if (s.L > 1 && !(last && s.boundary == ringstar::Boundary::Open)) {
      const int j = (i + 1) % s.L;
      h -= s.J * (site_op(n, i, 'Z') * site_op(n, j, 'Z'));
    }
  }
  h += s.h_c * site_op(n, c, 'X') + s.g_c * site_op(n, c, 'Z');
  return h;
}

struct Eig {
  Eigen::VectorXd e;
  Mat v;
};

inline Eig eig(const Mat& h) {
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  return {es.eigenvalues(), es.eigenvectors()};
}

inline Mat propagator(const Eig& d, double t) {
  Eigen::VectorXcd ph(d.e.size());
  for (Eigen::Index k = 0; k < d.e.size(); ++k) ph[k] = std::exp(cplx(0, -d.e[k] * t));
  return d.v * ph.asDiagonal() * d.v.adjoint();
}

inline Eigen::VectorXcd random_state(int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> nd;
  Eigen::VectorXcd v(1 << n);
  for (auto& a : v) a = cplx(nd(rng), nd(rng));
  return v.normalized();
}

}  // namespace oracle
