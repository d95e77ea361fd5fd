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

#ifndef CTTS_COMMON_FILE_UTIL_H_
#define CTTS_COMMON_FILE_UTIL_H_

#include <filesystem>
#include <string>
#include <string_view>

namespace ctts {

std::string ReadFileToString(const std::filesystem::path& path);

// Writes to a sibling temp file and renames over the target, so readers
// never observe a half-written file.
void WriteFileAtomic(const std::filesystem::path& path, std::string_view bytes);

// Hex SHA-256 of a byte string / a file's contents.
std::string Sha256Hex(std::string_view bytes);
std::string FileSha256(const std::filesystem::path& path);

// Resolves `p` against `base_dir` unless it is already absolute.
std::filesystem::path ResolvePath(const std::filesystem::path& base_dir,
                                  const std::filesystem::path& p);

// Fresh private directory under the system temp dir, removed on destruction.
class ScopedTempDir {
 public:
  explicit ScopedTempDir(const std::string& prefix = "ctts");
  ~ScopedTempDir();
  ScopedTempDir(const ScopedTempDir&) = delete;
  ScopedTempDir& operator=(const ScopedTempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

// Quotes a string for POSIX sh.
std::string ShellQuote(std::string_view s);

}  // namespace ctts

#endif  // CTTS_COMMON_FILE_UTIL_H_
