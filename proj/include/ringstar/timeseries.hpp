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

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ringstar/model.hpp"

namespace ringstar {

struct TimeSeries {
  std::vector<double> times;
  std::vector<double> values;
  /// Ordered `key=value` pairs written as comment lines ahead of the data.
  std::vector<std::pair<std::string, std::string>> metadata;

  std::size_t size() const noexcept { return times.size(); }

  /// Throws UsageError on length mismatch or non-increasing times.
  void validate() const;

  void set_meta(std::string key, std::string value);
  std::optional<std::string> meta(std::string_view key) const;
};

/// Adds the model parameters to the metadata.
void describe_model(TimeSeries& s, const ModelSpec& spec);

/// `# key=value` lines, a `t,value` header, then rows printed with %.17g.
void write_csv(std::ostream& os, const TimeSeries& s);
std::string to_csv(const TimeSeries& s);
TimeSeries read_csv(std::istream& is);

/// Uniform grid of n points on [0, t_max]; n = 1 gives {0}.
std::vector<double> linear_grid(double t_max, int n);
/// Log-spaced grid of n points on [t_min, t_max].
std::vector<double> log_grid(double t_min, double t_max, int n);

}  // namespace ringstar
