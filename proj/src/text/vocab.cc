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

#include "ctts/text/vocab.h"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "ctts/common/error.h"
#include "ctts/common/file_util.h"

namespace ctts {

TextVocab::TextVocab(std::vector<std::string> tokens) : tokens_(std::move(tokens)) {
  for (size_t i = 0; i < tokens_.size(); ++i) {
    if (tokens_[i].empty() || tokens_[i].find('\n') != std::string::npos) {
      throw ValidationError("vocab token " + std::to_string(i) + " is empty or multi-line");
    }
    if (!index_.emplace(tokens_[i], static_cast<int>(i)).second) {
      throw ValidationError("duplicate vocab token: " + tokens_[i]);
    }
  }
}

TextVocab TextVocab::Load(const std::filesystem::path& path) {
  std::istringstream in(ReadFileToString(path));
  std::vector<std::string> tokens;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    tokens.push_back(line);
  }
  try {
    return TextVocab(std::move(tokens));
  } catch (const ValidationError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::string TextVocab::Serialize() const {
  std::string out;
  for (const auto& t : tokens_) {
    out += t;
    out += '\n';
  }
  return out;
}

void TextVocab::Save(const std::filesystem::path& path) const {
  WriteFileAtomic(path, Serialize());
}

std::string TextVocab::Digest() const { return Sha256Hex(Serialize()); }

int TextVocab::IdOrUnk(const std::string& token) const {
  auto it = index_.find(token);
  if (it != index_.end()) return it->second;
  int unk = unk_id();
  if (unk < 0) throw ValidationError("vocabulary has no " + std::string(kUnk) + " entry");
  return unk;
}

int TextVocab::Find(const std::string& token) const {
  auto it = index_.find(token);
  return it == index_.end() ? -1 : it->second;
}

const std::string& TextVocab::Token(int id) const {
  if (id < 0 || id >= size()) {
    throw ValidationError("token id out of range: " + std::to_string(id));
  }
  return tokens_[id];
}

std::string EmotionMarker(const std::string& emotion) { return "<emo:" + emotion + ">"; }
std::string SpeakerMarker(const std::string& speaker) { return "<spk:" + speaker + ">"; }

std::vector<std::string> SplitContext(const std::string& context) {
  auto is_word_char = [](unsigned char c) { return std::isalnum(c) || c >= 0x80; };
  std::vector<std::string> out;
  std::string cur;
  auto flush = [&]() {
    if (!cur.empty()) out.push_back(std::move(cur));
    cur.clear();
  };
  for (size_t i = 0; i < context.size(); ++i) {
    unsigned char c = static_cast<unsigned char>(context[i]);
    if (std::isspace(c)) {
      flush();
    } else if (is_word_char(c)) {
      cur.push_back(static_cast<char>(std::tolower(c)));
    } else if (c == '\'') {
      bool prev = i > 0 && is_word_char(static_cast<unsigned char>(context[i - 1]));
      bool next = i + 1 < context.size() &&
                  is_word_char(static_cast<unsigned char>(context[i + 1]));
      if (prev || next) {
        cur.push_back('\'');
      } else {
        flush();
        out.emplace_back("'");
      }
    } else {
      flush();
      out.emplace_back(1, static_cast<char>(c));
    }
  }
  flush();
  return out;
}

TokenSequence TokenizeContext(const std::string& context, const TextVocab& vocab,
                              int max_length) {
  TokenSequence seq;
  for (const auto& tok : SplitContext(context)) seq.ids.push_back(vocab.IdOrUnk(tok));
  if (static_cast<int>(seq.size()) > max_length) {
    throw ValidationError("context has " + std::to_string(seq.size()) +
                          " tokens, above the maximum of " + std::to_string(max_length));
  }
  return seq;
}

TokenSequence EncodeLabels(const std::string& emotion, const std::string& speaker,
                           const TextVocab& vocab) {
  TokenSequence seq;
  for (const auto& marker : {EmotionMarker(emotion), SpeakerMarker(speaker)}) {
    int id = vocab.Find(marker);
    if (id < 0) throw ValidationError("unregistered label " + marker);
    seq.ids.push_back(id);
  }
  return seq;
}

TextVocab BuildVocab(const std::vector<std::string>& corpus,
                     const std::vector<std::string>& reserved) {
  if (corpus.empty()) throw ValidationError("build_vocab: corpus is empty");
  std::map<std::string, long> counts;
  for (const auto& line : corpus) {
    for (auto& tok : SplitContext(line)) ++counts[tok];
  }
  std::vector<std::pair<std::string, long>> ranked;
  for (auto& [tok, n] : counts) {
    if (std::find(reserved.begin(), reserved.end(), tok) == reserved.end()) {
      ranked.emplace_back(tok, n);
    }
  }
  std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  std::vector<std::string> tokens = reserved;
  for (auto& [tok, n] : ranked) tokens.push_back(tok);
  return TextVocab(std::move(tokens));
}

std::vector<std::string> DecodeTokens(const TokenSequence& seq, const TextVocab& vocab) {
  std::vector<std::string> out;
  for (int id : seq.ids) out.push_back(vocab.Token(id));
  return out;
}

}  // namespace ctts
