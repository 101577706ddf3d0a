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

#pragma once

#include <stdexcept>
#include <string>

namespace ringstar {

/// Caller violated a precondition (bad sizes, unsupported options, malformed
/// input). Maps to CLI exit status 2.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A configured resource cap (dense dimension, memory) would be exceeded.
/// Maps to CLI exit status 3.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numerical procedure failed (non-convergence, breakdown that cannot be
/// recovered). Maps to CLI exit status 4.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Nested commutator expansion exceeded its term-count cap.
class TruncationError : public NumericalError {
 public:
  TruncationError(const std::string& what, int order_reached, std::size_t term_count)
      : NumericalError(what), order_reached_(order_reached), term_count_(term_count) {}

  /// Last order that was computed completely (0 if none).
  int order_reached() const noexcept { return order_reached_; }
  std::size_t term_count() const noexcept { return term_count_; }

 private:
  int order_reached_;
  std::size_t term_count_;
};

/// Least-squares fit failed to converge or the input was degenerate.
class FitError : public NumericalError {
 public:
  FitError(const std::string& what, double best_residual)
      : NumericalError(what), best_residual_(best_residual) {}
  double best_residual() const noexcept { return best_residual_; }

 private:
  double best_residual_;
};

}  // namespace ringstar
