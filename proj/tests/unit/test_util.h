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

#ifndef CTTS_TESTS_UNIT_TEST_UTIL_H_
#define CTTS_TESTS_UNIT_TEST_UTIL_H_

#include <filesystem>
#include <string>

#include <unistd.h>

namespace ctts {
namespace testing_util {

inline std::filesystem::path SourceDir() { return CTTS_SOURCE_DIR; }
inline std::filesystem::path LexiconPath() {
  return SourceDir() / "data" / "lexicon" / "cmudict.dict";
}

// Fresh empty directory under the system temp dir, private to this process.
inline std::filesystem::path TempDir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() /
             ("ctts_test_" + name + "_" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace testing_util
}  // namespace ctts

#endif  // CTTS_TESTS_UNIT_TEST_UTIL_H_
