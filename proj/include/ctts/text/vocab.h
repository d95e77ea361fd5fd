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

#ifndef CTTS_TEXT_VOCAB_H_
#define CTTS_TEXT_VOCAB_H_

#include <filesystem>
#include <string>
#include <unordered_map>
#include <vector>

#include "ctts/text/phonemizer.h"

namespace ctts {

// Context token indices behind C. May be empty (blank context).
struct TokenSequence {
  std::vector<int> ids;

  size_t size() const { return ids.size(); }
  bool empty() const { return ids.empty(); }
};

// Text vocabulary for context tokens. Line number in the saved file is the id.
class TextVocab {
 public:
  static constexpr const char* kPad = "<pad>";
  static constexpr const char* kUnk = "<unk>";

  TextVocab() = default;
  explicit TextVocab(std::vector<std::string> tokens);

  static TextVocab Load(const std::filesystem::path& path);
  void Save(const std::filesystem::path& path) const;
  // The exact bytes Save() writes.
  std::string Serialize() const;
  std::string Digest() const;

  int size() const { return static_cast<int>(tokens_.size()); }
  bool Contains(const std::string& token) const { return index_.count(token) > 0; }
  // Id of `token`, or the UNK id when absent.
  int IdOrUnk(const std::string& token) const;
  int Find(const std::string& token) const;  // -1 when absent
  const std::string& Token(int id) const;
  const std::vector<std::string>& tokens() const { return tokens_; }
  int unk_id() const { return Find(kUnk); }

  bool operator==(const TextVocab& other) const { return tokens_ == other.tokens_; }

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, int> index_;
};

// Reserved label markers used by the fixed-label (M-LTTS) conditioning.
std::string EmotionMarker(const std::string& emotion);
std::string SpeakerMarker(const std::string& speaker);

// Lower-cases and splits on whitespace and punctuation. Apostrophes touching a
// letter or digit stay inside the word ("it's", "'s"); every other
// punctuation character becomes its own token.
std::vector<std::string> SplitContext(const std::string& context);

TokenSequence TokenizeContext(const std::string& context, const TextVocab& vocab,
                              int max_length = kDefaultMaxSequenceLength);

// Two-token sequence [<emo:E>, <spk:S>]. Both markers must be registered.
TokenSequence EncodeLabels(const std::string& emotion, const std::string& speaker,
                           const TextVocab& vocab);

// Reserved symbols first, then corpus tokens by descending count with ties
// broken lexicographically.
TextVocab BuildVocab(const std::vector<std::string>& corpus,
                     const std::vector<std::string>& reserved);

std::vector<std::string> DecodeTokens(const TokenSequence& seq, const TextVocab& vocab);

}  // namespace ctts

#endif  // CTTS_TEXT_VOCAB_H_
