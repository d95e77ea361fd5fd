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

#include "ctts/text/phonemizer.h"

#include <cctype>
#include <cstring>

#include "ctts/common/error.h"
#include "ctts/common/string_util.h"

namespace ctts {

namespace {

struct Item {
  bool is_word;
  std::string text;
};

bool IsPunctuation(char c) {
  return std::strchr(PhoneInventory::kPunctuation, c) != nullptr;
}

std::string DescribeChar(unsigned char c) {
  if (std::isprint(c)) return std::string("'") + static_cast<char>(c) + "'";
  char buf[8];
  std::snprintf(buf, sizeof(buf), "0x%02X", c);
  return buf;
}

std::vector<Item> Segment(const std::string& content) {
  std::vector<Item> items;
  std::string word;
  auto flush = [&]() {
    if (!word.empty()) items.push_back({true, std::move(word)});
    word.clear();
  };
  for (unsigned char c : content) {
    if (std::isalpha(c) || c == '\'') {
      word.push_back(static_cast<char>(c));
    } else if (std::isspace(c) || c == '-' || c == '"' || c == '(' || c == ')') {
      flush();
    } else if (IsPunctuation(static_cast<char>(c))) {
      flush();
      items.push_back({false, std::string(1, static_cast<char>(c))});
    } else {
      throw ValidationError("phonemize: unsupported character " + DescribeChar(c) +
                            " in \"" + content + "\"");
    }
  }
  flush();
  return items;
}

std::vector<std::string> Pronounce(const std::string& word, const Lexicon& lexicon) {
  if (const auto* phones = lexicon.Find(word)) return *phones;
  std::string bare;
  for (char c : word) {
    if (c != '\'') bare.push_back(c);
  }
  if (bare != word) {
    if (const auto* phones = lexicon.Find(bare)) return *phones;
  }
  std::vector<std::string> letters;
  for (char c : bare) {
    letters.push_back(PhoneInventory::LetterSymbol(
        static_cast<char>(std::toupper(static_cast<unsigned char>(c)))));
  }
  return letters;
}

}  // namespace

PhonemeSequence Phonemize(const std::string& content, const Lexicon& lexicon,
                          int max_length) {
  if (Trim(content).empty()) {
    throw ValidationError("phonemize: content is empty");
  }
  const PhoneInventory& inv = lexicon.inventory();
  PhonemeSequence seq;
  auto push = [&](const std::string& symbol) {
    seq.ids.push_back(inv.Id(symbol));
    seq.symbols.push_back(symbol);
  };
  bool emitted_any = false;
  for (const Item& item : Segment(content)) {
    if (item.is_word) {
      auto phones = Pronounce(item.text, lexicon);
      // A word made only of apostrophes has nothing to say.
      if (phones.empty()) continue;
      if (emitted_any) push(PhoneInventory::kWordBoundary);
      for (const auto& ph : phones) push(ph);
    } else {
      push(item.text);
    }
    emitted_any = true;
  }
  push(PhoneInventory::kEos);
  if (static_cast<int>(seq.size()) > max_length) {
    throw ValidationError("phonemize: " + std::to_string(seq.size()) +
                          " phonemes exceed the maximum of " +
                          std::to_string(max_length));
  }
  return seq;
}

std::vector<std::string> DecodePhonemes(const std::vector<int>& ids,
                                        const PhoneInventory& inventory) {
  std::vector<std::string> out;
  out.reserve(ids.size());
  for (int id : ids) out.push_back(inventory.Symbol(id));
  return out;
}

}  // namespace ctts
