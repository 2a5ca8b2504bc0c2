// Copyright 2026 The kldro Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Small text helpers shared by the CSV writers and readers.

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace kldro::io {

/// Shortest decimal representation that parses back to the same double.
std::string format_double(double value);

/// Strict parse of a whole field; throws std::invalid_argument on
/// trailing garbage or an empty field.
double parse_double(std::string_view text);
long long parse_int(std::string_view text);

/// Splits on `sep` without quoting support; our CSVs never quote.
std::vector<std::string_view> split(std::string_view line, char sep = ',');

}  // namespace kldro::io
