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

#include "ctts/text/lexicon.h"

#include <sstream>

#include "ctts/common/error.h"
#include "ctts/common/file_util.h"
#include "ctts/common/string_util.h"

namespace ctts {

PhoneInventory PhoneInventory::Default() {
  static const char* kVowels[] = {"AA", "AE", "AH", "AO", "AW",
                                  "AY", "EH", "ER", "EY", "IH",
                                  "IY", "OW", "OY", "UH", "UW"};
  static const char* kConsonants[] = {"B",  "CH", "D", "DH", "F",  "G",
                                      "HH", "JH", "K", "L",  "M",  "N",
                                      "NG", "P",  "R", "S",  "SH", "T",
                                      "TH", "V",  "W", "Y",  "Z",  "ZH"};
  std::vector<std::string> symbols = {kPad, kEos, kWordBoundary};
  for (const char* p = kPunctuation; *p != '\0'; ++p) symbols.emplace_back(1, *p);
  for (const char* v : kVowels) {
    for (char stress : {'0', '1', '2'}) symbols.push_back(std::string(v) + stress);
  }
  for (const char* c : kConsonants) symbols.emplace_back(c);
  for (char c = 'A'; c <= 'Z'; ++c) symbols.push_back(LetterSymbol(c));
  return PhoneInventory(std::move(symbols));
}

PhoneInventory::PhoneInventory(std::vector<std::string> symbols)
    : symbols_(std::move(symbols)) {
  if (symbols_.empty() || symbols_[0] != kPad) {
    throw ValidationError("phone inventory must start with PAD");
  }
  for (size_t i = 0; i < symbols_.size(); ++i) {
    if (!index_.emplace(symbols_[i], static_cast<int>(i)).second) {
      throw ValidationError("duplicate phone symbol: " + symbols_[i]);
    }
  }
}

int PhoneInventory::Id(const std::string& symbol) const {
  auto it = index_.find(symbol);
  if (it == index_.end()) throw ValidationError("unknown phone symbol: " + symbol);
  return it->second;
}

const std::string& PhoneInventory::Symbol(int id) const {
  if (id < 0 || id >= size()) {
    throw ValidationError("phone id out of range: " + std::to_string(id));
  }
  return symbols_[id];
}

Lexicon Lexicon::Load(const std::filesystem::path& path, PhoneInventory inventory) {
  return Parse(ReadFileToString(path), std::move(inventory));
}

Lexicon Lexicon::Parse(const std::string& text, PhoneInventory inventory) {
  Lexicon lexicon(std::move(inventory));
  lexicon.digest_ = Sha256Hex(text);
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.rfind(";;;", 0) == 0) continue;
    // cmudict.dict appends "# comment" to a few entries.
    size_t hash = line.find(" #");
    if (hash != std::string::npos) line.resize(hash);
    auto fields = SplitWhitespace(line);
    if (fields.empty()) continue;
    if (fields.size() < 2) {
      throw ParseError("lexicon line " + std::to_string(line_no) +
                       ": no pronunciation for '" + fields[0] + "'");
    }
    std::string word = ToUpper(fields[0]);
    size_t paren = word.find('(');
    if (paren != std::string::npos && paren > 0 && word.back() == ')') {
      // Alternate pronunciation; the first listed one wins.
      continue;
    }
    if (lexicon.entries_.count(word) > 0) continue;
    std::vector<std::string> phones(fields.begin() + 1, fields.end());
    for (const auto& ph : phones) {
      if (!lexicon.inventory_.Contains(ph)) {
        throw ParseError("lexicon line " + std::to_string(line_no) +
                         ": phone '" + ph + "' not in inventory");
      }
    }
    lexicon.entries_.emplace(std::move(word), std::move(phones));
  }
  return lexicon;
}

void Lexicon::Add(const std::string& word, std::vector<std::string> phones) {
  for (const auto& ph : phones) inventory_.Id(ph);
  entries_[ToUpper(word)] = std::move(phones);
}

const std::vector<std::string>* Lexicon::Find(const std::string& word) const {
  auto it = entries_.find(ToUpper(word));
  return it == entries_.end() ? nullptr : &it->second;
}

}  // namespace ctts
