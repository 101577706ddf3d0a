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

#include "ringstar/kv_config.hpp"

#include <cctype>
#include <set>
#include <sstream>

#include "ringstar/error.hpp"

namespace ringstar {
namespace {

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

// Strips a trailing comment that is not inside quotes.
std::string_view strip_comment(std::string_view s) {
  bool quoted = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '"') quoted = !quoted;
    if (s[i] == '#' && !quoted) return s.substr(0, i);
  }
  return s;
}

std::string unquote(std::string_view v, int line) {
  v = trim(v);
  if (v.size() >= 2 && v.front() == '"' && v.back() == '"') return std::string(v.substr(1, v.size() - 2));
  if (v.find('"') != std::string_view::npos) {
    throw UsageError("unbalanced quotes on config line " + std::to_string(line));
  }
  if (v.empty()) throw UsageError("empty value on config line " + std::to_string(line));
  return std::string(v);
}

bool valid_key(std::string_view k) {
  if (k.empty()) return false;
  for (char c : k) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '-')) return false;
  }
  return k.front() != '.' && k.back() != '.';
}

}  // namespace

const std::string& KvEntry::scalar() const {
  if (is_list || values.size() != 1) {
    throw UsageError("config key '" + key + "' expects a single value");
  }
  return values.front();
}

const KvEntry* KvDocument::find(std::string_view key) const {
  for (const auto& e : entries) {
    if (e.key == key) return &e;
  }
  return nullptr;
}

KvDocument parse_kv(std::string_view text) {
  KvDocument doc;
  std::set<std::string> seen;
  std::string section;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = trim(strip_comment(raw));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw UsageError("bad section header on config line " + std::to_string(line_no));
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (!section.empty() && !valid_key(section)) {
        throw UsageError("bad section name on config line " + std::to_string(line_no));
      }
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string_view::npos) throw UsageError("expected key = value on config line " + std::to_string(line_no));
    std::string key(trim(line.substr(0, eq)));
    if (!valid_key(key)) throw UsageError("bad key on config line " + std::to_string(line_no));
    if (!section.empty()) key = section + "." + key;
    if (!seen.insert(key).second) throw UsageError("duplicate config key '" + key + "'");
    std::string_view value = trim(line.substr(eq + 1));
    KvEntry entry;
    entry.key = key;
    entry.line = line_no;
    if (!value.empty() && value.front() == '[') {
      if (value.back() != ']') throw UsageError("unterminated list on config line " + std::to_string(line_no));
      entry.is_list = true;
      std::string_view body = trim(value.substr(1, value.size() - 2));
      while (!body.empty()) {
        auto comma = body.find(',');
        entry.values.push_back(unquote(body.substr(0, comma), line_no));
        if (comma == std::string_view::npos) break;
        body = trim(body.substr(comma + 1));
        if (body.empty()) break;  // trailing comma
      }
    } else {
      entry.values.push_back(unquote(value, line_no));
    }
    doc.entries.push_back(std::move(entry));
  }
  return doc;
}

}  // namespace ringstar
