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

#include "ctts/common/process.h"

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>

#include "ctts/common/error.h"
#include "ctts/common/file_util.h"

namespace ctts {

namespace fs = std::filesystem;

CommandResult RunCommand(const std::string& command) {
  char tmpl[] = "/tmp/ctts_stderr_XXXXXX";
  int fd = mkstemp(tmpl);
  if (fd < 0) throw IoError("cannot create stderr capture file");
  close(fd);
  fs::path err_path(tmpl);

  std::string full = "(" + command + "\n) 2>" + ShellQuote(err_path.string());
  FILE* pipe = popen(full.c_str(), "r");
  if (pipe == nullptr) {
    fs::remove(err_path);
    throw IoError("cannot spawn: " + command);
  }
  CommandResult result;
  std::array<char, 4096> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
    result.stdout_text.append(buf.data(), n);
  }
  int status = pclose(pipe);
  if (status == -1) {
    result.exit_code = -1;
  } else if (WIFEXITED(status)) {
    result.exit_code = WEXITSTATUS(status);
  } else {
    result.exit_code = 128 + (WIFSIGNALED(status) ? WTERMSIG(status) : 0);
  }
  try {
    result.stderr_text = ReadFileToString(err_path);
  } catch (const IoError&) {
  }
  std::error_code ec;
  fs::remove(err_path, ec);
  return result;
}

}  // namespace ctts
