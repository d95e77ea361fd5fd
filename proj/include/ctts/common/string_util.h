// Copyright (c) 2026 The ctts Authors
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

#ifndef CTTS_COMMON_STRING_UTIL_H_
#define CTTS_COMMON_STRING_UTIL_H_

#include <string>
#include <string_view>
#include <vector>

namespace ctts {

std::string Trim(std::string_view s);
std::string ToLower(std::string_view s);
std::string ToUpper(std::string_view s);
// Splits on runs of ASCII whitespace; never yields empty pieces.
std::vector<std::string> SplitWhitespace(std::string_view s);
std::string Join(const std::vector<std::string>& parts, std::string_view sep);
// Collapses runs of whitespace to a single space and trims the ends.
std::string CollapseSpaces(std::string_view s);
void ReplaceAll(std::string* s, std::string_view from, std::string_view to);

}  // namespace ctts

#endif  // CTTS_COMMON_STRING_UTIL_H_
