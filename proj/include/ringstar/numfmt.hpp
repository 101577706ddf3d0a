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

// Locale-independent number formatting shared by the text formats.

#pragma once

#include <string>
#include <string_view>

namespace ringstar {

/// Shortest representation that parses back to the identical double.
std::string format_shortest(double v);

/// Exactly 17 significant digits ("%.17g"); also round-trips.
std::string format_g17(double v);

/// Parses a whole token as a double; throws UsageError otherwise.
double parse_double(std::string_view token);

/// Parses a whole token as a signed integer; throws UsageError otherwise.
long long parse_int(std::string_view token);

}  // namespace ringstar
