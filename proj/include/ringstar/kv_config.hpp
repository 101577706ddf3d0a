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

// Minimal flat TOML-style key-value reader.
//
//   # comment
//   experiment = "otoc_curve"
//   [model]            # prefixes following keys with "model."
//   lambda = 0.6
//   sweep.lambda = [0, 0.6, 1.2]
//
// Values are kept as text; quotes around strings are removed. Lists are
// one level deep. Duplicate keys are rejected.

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace ringstar {

struct KvEntry {
  std::string key;
  std::vector<std::string> values;
  bool is_list = false;
  int line = 0;

  /// The single value; throws UsageError for lists.
  const std::string& scalar() const;
};

struct KvDocument {
  std::vector<KvEntry> entries;

  const KvEntry* find(std::string_view key) const;
};

KvDocument parse_kv(std::string_view text);

}  // namespace ringstar
