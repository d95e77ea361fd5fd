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

#ifndef CTTS_EVAL_WER_H_
#define CTTS_EVAL_WER_H_

#include <string>
#include <vector>

namespace ctts {

// Lower-cases, drops punctuation (apostrophes survive between two word
// characters), collapses whitespace and splits into words.
std::vector<std::string> NormalizeTranscript(const std::string& text);

struct WerResult {
  double rate = 0.0;
  int substitutions = 0;
  int insertions = 0;
  int deletions = 0;

  int errors() const { return substitutions + insertions + deletions; }
};

// Word-level Levenshtein distance with unit costs. Counts come from one
// minimal alignment, preferring substitution, then insertion, then deletion
// when tracing back. Empty reference raises ValidationError.
WerResult Wer(const std::vector<std::string>& reference,
              const std::vector<std::string>& hypothesis);

}  // namespace ctts

#endif  // CTTS_EVAL_WER_H_
