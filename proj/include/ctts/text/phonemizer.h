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

#ifndef CTTS_TEXT_PHONEMIZER_H_
#define CTTS_TEXT_PHONEMIZER_H_

#include <string>
#include <vector>

#include "ctts/text/lexicon.h"

namespace ctts {

inline constexpr int kDefaultMaxSequenceLength = 512;

// Content phonemes p. `ids` and `symbols` are parallel; the last entry is EOS.
struct PhonemeSequence {
  std::vector<int> ids;
  std::vector<std::string> symbols;

  size_t size() const { return ids.size(); }
};

// Converts content text into phoneme tokens.
//
// Words (letters plus apostrophes) are looked up case-insensitively. Words
// missing from the lexicon are spelled out with one @X symbol per letter.
// Consecutive words are separated by WB, punctuation in ".,!?;:" maps to its
// own symbol, hyphens split words, and double quotes and parentheses are
// dropped. Any other character is rejected with a ValidationError.
PhonemeSequence Phonemize(const std::string& content, const Lexicon& lexicon,
                          int max_length = kDefaultMaxSequenceLength);

// Inverse of the id encoding.
std::vector<std::string> DecodePhonemes(const std::vector<int>& ids,
                                        const PhoneInventory& inventory);

}  // namespace ctts

#endif  // CTTS_TEXT_PHONEMIZER_H_
