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

#include "ctts/eval/wer.h"

#include <algorithm>
#include <cctype>

#include "ctts/common/error.h"
#include "ctts/common/string_util.h"

namespace ctts {

namespace {

bool IsWordChar(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }

}  // namespace

std::vector<std::string> NormalizeTranscript(const std::string& text) {
  const std::string lower = ToLower(text);
  std::string cleaned;
  cleaned.reserve(lower.size());
  for (size_t i = 0; i < lower.size(); ++i) {
    const char c = lower[i];
    if (IsWordChar(c) || static_cast<unsigned char>(c) >= 0x80) {
      cleaned += c;
    } else if (c == '\'' && i > 0 && i + 1 < lower.size() && IsWordChar(lower[i - 1]) &&
               IsWordChar(lower[i + 1])) {
      cleaned += c;
    } else {
      cleaned += ' ';
    }
  }
  return SplitWhitespace(cleaned);
}

WerResult Wer(const std::vector<std::string>& reference,
              const std::vector<std::string>& hypothesis) {
  if (reference.empty()) throw ValidationError("wer: reference is empty");
  const size_t n = reference.size();
  const size_t m = hypothesis.size();
  std::vector<std::vector<int>> d(n + 1, std::vector<int>(m + 1, 0));
  for (size_t i = 0; i <= n; ++i) d[i][0] = static_cast<int>(i);
  for (size_t j = 0; j <= m; ++j) d[0][j] = static_cast<int>(j);
  for (size_t i = 1; i <= n; ++i) {
    for (size_t j = 1; j <= m; ++j) {
      const int sub = d[i - 1][j - 1] + (reference[i - 1] == hypothesis[j - 1] ? 0 : 1);
      d[i][j] = std::min({sub, d[i][j - 1] + 1, d[i - 1][j] + 1});
    }
  }
  WerResult r;
  size_t i = n;
  size_t j = m;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0) {
      const bool same = reference[i - 1] == hypothesis[j - 1];
      if (d[i][j] == d[i - 1][j - 1] + (same ? 0 : 1)) {
        if (!same) ++r.substitutions;
        --i;
        --j;
        continue;
      }
    }
    if (j > 0 && d[i][j] == d[i][j - 1] + 1) {
      ++r.insertions;
      --j;
    } else {
      ++r.deletions;
      --i;
    }
  }
  r.rate = static_cast<double>(r.errors()) / static_cast<double>(n);
  return r;
}

}  // namespace ctts
