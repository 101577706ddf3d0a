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

// Lanczos time stepping: psi(t + tau) = beta0 * V exp(-i T tau) e_0 with V an
// m-dimensional Krylov basis and T the tridiagonal projection of H.

#pragma once

#include <Eigen/Dense>

#include "ringstar/kernel.hpp"
#include "ringstar/model.hpp"
#include "ringstar/state.hpp"

namespace ringstar {

struct KrylovParams {
  int subspace_dim = 30;
  double dt = 0.05;
  /// Accepted local error per step of length dt, relative to the state norm.
  /// Shorter steps get a proportional share.
  double tolerance = 1e-10;

  void validate() const;
};

struct EvolutionStats {
  long steps = 0;
  long halvings = 0;
  long reorthogonalizations = 0;
  long renormalizations = 0;
  long happy_breakdowns = 0;
  /// Sum of the a posteriori local error estimates.
  double error_estimate = 0.0;
};

/// Holds a reference to the kernel; the kernel must outlive the propagator.
class KrylovPropagator {
 public:
  explicit KrylovPropagator(const HamiltonianKernel& h, KrylovParams params = {});

  /// psi <- exp(-i H t) psi; t may be negative.
  void evolve(Eigen::VectorXcd& psi, double t);

  const EvolutionStats& stats() const noexcept { return stats_; }
  const KrylovParams& params() const noexcept { return params_; }

 private:
  // Advances psi by at most `tau` and returns the time actually covered.
  double step(Eigen::VectorXcd& psi, double tau);

  const HamiltonianKernel& h_;
  KrylovParams params_;
  EvolutionStats stats_;
  Eigen::MatrixXcd basis_;
  Eigen::VectorXcd work_;
};

StateVector evolve_krylov(const ModelSpec& spec, const StateVector& psi, double t,
                          const KrylovParams& params = {}, EvolutionStats* stats = nullptr);

}  // namespace ringstar
