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

#ifndef CTTS_TEXT_LEXICON_H_
#define CTTS_TEXT_LEXICON_H_

#include <filesystem>
#include <string>
#include <unordered_map>
#include <vector>

namespace ctts {

// Ordered phone symbol table. Id 0 is always PAD.
class PhoneInventory {
 public:
  static constexpr const char* kPad = "PAD";
  static constexpr const char* kEos = "EOS";
  static constexpr const char* kWordBoundary = "WB";
  // Punctuation characters that carry their own symbol.
  static constexpr const char* kPunctuation = ".,!?;:";

  // PAD, EOS, WB, punctuation, 39 ARPAbet phonemes (vowels with stress
  // 0/1/2), then the letter-fallback symbols @A..@Z.
  static PhoneInventory Default();

  explicit PhoneInventory(std::vector<std::string> symbols);

  int size() const { return static_cast<int>(symbols_.size()); }
  bool Contains(const std::string& symbol) const {
    return index_.count(symbol) > 0;
  }
  // Throws ValidationError for unknown symbols.
  int Id(const std::string& symbol) const;
  const std::string& Symbol(int id) const;
  const std::vector<std::string>& symbols() const { return symbols_; }

  static std::string LetterSymbol(char upper_letter) {
    return std::string("@") + upper_letter;
  }

 private:
  std::vector<std::string> symbols_;
  std::unordered_map<std::string, int> index_;
};

// Pronunciation dictionary in CMU text format. Words are stored upper-cased;
// alternate pronunciations ("WORD(2)") after the first are ignored.
class Lexicon {
 public:
  explicit Lexicon(PhoneInventory inventory = PhoneInventory::Default())
      : inventory_(std::move(inventory)) {}

  static Lexicon Load(const std::filesystem::path& path,
                      PhoneInventory inventory = PhoneInventory::Default());
  static Lexicon Parse(const std::string& text,
                       PhoneInventory inventory = PhoneInventory::Default());

  // Adds or replaces an entry; every symbol must be in the inventory.
  void Add(const std::string& word, std::vector<std::string> phones);
  const std::vector<std::string>* Find(const std::string& word) const;

  const PhoneInventory& inventory() const { return inventory_; }
  size_t size() const { return entries_.size(); }
  // Digest of the source text, recorded in checkpoints.
  const std::string& digest() const { return digest_; }

 private:
  PhoneInventory inventory_;
  std::unordered_map<std::string, std::vector<std::string>> entries_;
  std::string digest_;
};

}  // namespace ctts

#endif  // CTTS_TEXT_LEXICON_H_
