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

#ifndef CTTS_COMMON_JSON_UTIL_H_
#define CTTS_COMMON_JSON_UTIL_H_

#include <initializer_list>
#include <string>

#include "json.hpp"

namespace ctts {

// Throws ConfigError naming `section.key` for the first key of `j` that is
// not in `allowed`, or if `j` is not an object.
void RejectUnknownKeys(const nlohmann::json& j, std::initializer_list<const char*> allowed,
                       const std::string& section);

// Reads j[key] into *out when present; type errors become ConfigError.
template <typename T>
void ReadOptional(const nlohmann::json& j, const char* key, const std::string& section,
                  T* out);

}  // namespace ctts

#include "ctts/common/error.h"

namespace ctts {

template <typename T>
void ReadOptional(const nlohmann::json& j, const char* key, const std::string& section,
                  T* out) {
  if (!j.contains(key)) return;
  try {
    j.at(key).get_to(*out);
  } catch (const nlohmann::json::exception&) {
    throw ConfigError("invalid value for " + section + "." + key);
  }
}

}  // namespace ctts

#endif  // CTTS_COMMON_JSON_UTIL_H_
