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

#include "ringstar/timeseries.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "ringstar/error.hpp"
#include "ringstar/numfmt.hpp"

namespace ringstar {

void TimeSeries::validate() const {
  if (times.size() != values.size()) throw UsageError("time series length mismatch");
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) throw UsageError("time series times must be strictly increasing");
  }
}

void TimeSeries::set_meta(std::string key, std::string value) {
  for (auto& [k, v] : metadata) {
    if (k == key) {
      v = std::move(value);
      return;
    }
  }
  metadata.emplace_back(std::move(key), std::move(value));
}

std::optional<std::string> TimeSeries::meta(std::string_view key) const {
  for (const auto& [k, v] : metadata) {
    if (k == key) return v;
  }
  return std::nullopt;
}

void describe_model(TimeSeries& s, const ModelSpec& spec) {
  s.set_meta("L", std::to_string(spec.L));
  s.set_meta("lambda", format_shortest(spec.lambda));
  s.set_meta("J", format_shortest(spec.J));
  s.set_meta("h", format_shortest(spec.h));
  s.set_meta("g", format_shortest(spec.g));
  s.set_meta("h_c", format_shortest(spec.h_c));
  s.set_meta("g_c", format_shortest(spec.g_c));
  s.set_meta("axis", to_string(spec.axis));
  s.set_meta("boundary", to_string(spec.boundary));
}

void write_csv(std::ostream& os, const TimeSeries& s) {
  s.validate();
  for (const auto& [k, v] : s.metadata) os << "# " << k << '=' << v << '\n';
  os << "t,value\n";
  for (std::size_t i = 0; i < s.size(); ++i) {
    os << format_g17(s.times[i]) << ',' << format_g17(s.values[i]) << '\n';
  }
}

std::string to_csv(const TimeSeries& s) {
  std::ostringstream os;
  write_csv(os, s);
  return os.str();
}

TimeSeries read_csv(std::istream& is) {
  TimeSeries s;
  std::string line;
  bool header = false;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line.rfind("# ", 0) == 0) {
      const auto eq = line.find('=');
      if (eq == std::string::npos) throw UsageError("malformed metadata line: " + line);
      s.metadata.emplace_back(line.substr(2, eq - 2), line.substr(eq + 1));
      continue;
    }
    if (!header) {
      if (line != "t,value") throw UsageError("missing t,value header");
      header = true;
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw UsageError("malformed data row: " + line);
    s.times.push_back(parse_double(std::string_view(line).substr(0, comma)));
    s.values.push_back(parse_double(std::string_view(line).substr(comma + 1)));
  }
  s.validate();
  return s;
}

std::vector<double> linear_grid(double t_max, int n) {
  if (n < 1) throw UsageError("grid needs at least one point");
  if (!(t_max >= 0.0)) throw UsageError("grid end must be nonnegative");
  if (n > 1 && t_max == 0.0) throw UsageError("grid end must be positive");
  std::vector<double> t(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) t[static_cast<std::size_t>(k)] = n == 1 ? 0.0 : t_max * k / (n - 1);
  return t;
}

std::vector<double> log_grid(double t_min, double t_max, int n) {
  if (n < 2 || !(t_min > 0.0) || !(t_max > t_min)) throw UsageError("invalid log grid");
  std::vector<double> t(static_cast<std::size_t>(n));
  const double a = std::log(t_min), b = std::log(t_max);
  for (int k = 0; k < n; ++k) t[static_cast<std::size_t>(k)] = std::exp(a + (b - a) * k / (n - 1));
  t.back() = t_max;
  return t;
}

}  // namespace ringstar
