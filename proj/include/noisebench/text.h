// Copyright 2026 The noisebench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NOISEBENCH_TEXT_H_
#define NOISEBENCH_TEXT_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace noisebench {

// Shortest decimal text that parses back to exactly `value`.
std::string format_double(double value);

// Strict full-string parse; accepts a leading '+' and surrounding blanks.
std::optional<double> parse_double(std::string_view text);
std::optional<long long> parse_int(std::string_view text);

std::string_view trim(std::string_view text);
std::vector<std::string_view> split(std::string_view text, char sep);

// Quotes a path or argument for /bin/sh.
std::string shell_quote(std::string_view text);

}  // namespace noisebench

#endif  // NOISEBENCH_TEXT_H_
