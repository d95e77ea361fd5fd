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

#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "ctts/common/error.h"
#include "ctts/common/random.h"
#include "ctts/common/string_util.h"
#include "ctts/text/lexicon.h"
#include "ctts/text/phonemizer.h"
#include "ctts/text/vocab.h"
#include "test_util.h"

namespace ctts {
namespace {

using Symbols = std::vector<std::string>;

const Lexicon& Cmu() {
  static const Lexicon* lexicon =
      new Lexicon(Lexicon::Load(testing_util::LexiconPath()));
  return *lexicon;
}

Symbols WithEos(Symbols s) {
  s.push_back(PhoneInventory::kEos);
  return s;
}

TEST(PhoneInventoryTest, DefaultLayout) {
  const PhoneInventory inv = PhoneInventory::Default();
  EXPECT_EQ(inv.Id(PhoneInventory::kPad), 0);
  EXPECT_TRUE(inv.Contains("EOS"));
  EXPECT_TRUE(inv.Contains("WB"));
  EXPECT_TRUE(inv.Contains("!"));
  EXPECT_TRUE(inv.Contains("AA0"));
  EXPECT_TRUE(inv.Contains("ZH"));
  EXPECT_TRUE(inv.Contains("@Q"));
  std::set<std::string> unique(inv.symbols().begin(), inv.symbols().end());
  EXPECT_EQ(static_cast<int>(unique.size()), inv.size());
  for (int id = 0; id < inv.size(); ++id) EXPECT_EQ(inv.Id(inv.Symbol(id)), id);
  EXPECT_THROW(inv.Id("XX9"), ValidationError);
}

TEST(LexiconTest, ParsesCmuFormat) {
  const Lexicon lex = Lexicon::Parse(
      ";;; comment\n"
      "GO  G OW1\n"
      "READ  R IY1 D\n"
      "READ(2)  R EH1 D\n");
  EXPECT_EQ(lex.size(), 2u);
  ASSERT_NE(lex.Find("read"), nullptr);
  EXPECT_EQ(*lex.Find("Read"), (Symbols{"R", "IY1", "D"}));
  EXPECT_EQ(lex.Find("missing"), nullptr);
  EXPECT_FALSE(lex.digest().empty());
}

TEST(LexiconTest, RejectsUnknownPhones) {
  Lexicon lex;
  EXPECT_THROW(lex.Add("BAD", {"QQ"}), ValidationError);
  EXPECT_ANY_THROW(Lexicon::Parse("BAD  QQ1\n"));
}

TEST(PhonemizeTest, LooksUpWords) {
  const PhonemeSequence seq = Phonemize("GO", Cmu());
  EXPECT_EQ(seq.symbols, WithEos({"G", "OW1"}));
  EXPECT_EQ(Phonemize("go", Cmu()).ids, seq.ids);
}

TEST(PhonemizeTest, LetterFallbackForUnknownWords) {
  EXPECT_EQ(Phonemize("QZXV", Cmu()).symbols, WithEos({"@Q", "@Z", "@X", "@V"}));
}

TEST(PhonemizeTest, BoundariesAndPunctuation) {
  EXPECT_EQ(Phonemize("Go away!", Cmu()).symbols,
            WithEos({"G", "OW1", "WB", "AH0", "W", "EY1", "!"}));
  EXPECT_EQ(Phonemize("go, go", Cmu()).symbols,
            WithEos({"G", "OW1", ",", "WB", "G", "OW1"}));
}

TEST(PhonemizeTest, Errors) {
  EXPECT_THROW(Phonemize("", Cmu()), ValidationError);
  EXPECT_THROW(Phonemize("   ", Cmu()), ValidationError);
  try {
    Phonemize("go #1", Cmu());
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("'#'"), std::string::npos);
  }
  EXPECT_THROW(Phonemize("go go go", Cmu(), 4), ValidationError);
}

TEST(PhonemizeTest, MatchesDictionaryOracle) {
  std::ifstream in(testing_util::SourceDir() / "tests" / "data" / "phonemize_oracle.tsv");
  ASSERT_TRUE(in);
  std::string line;
  int count = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const size_t tab = line.find('\t');
    ASSERT_NE(tab, std::string::npos);
    const std::string word = line.substr(0, tab);
    const Symbols expected = WithEos(SplitWhitespace(line.substr(tab + 1)));
    EXPECT_EQ(Phonemize(word, Cmu()).symbols, expected) << word;
    ++count;
  }
  EXPECT_EQ(count, 50);
}

TEST(PhonemizeTest, DeterministicAndDecodable) {
  Rng rng(5);
  const std::string alphabet = "abcdefghijklmnopqrstuvwxyz .,!?;:'";
  for (int trial = 0; trial < 200; ++trial) {
    std::string s = "x";
    const int n = 1 + static_cast<int>(rng.Uniform(30));
    for (int i = 0; i < n; ++i) s.push_back(alphabet[rng.Uniform(alphabet.size())]);
    const PhonemeSequence a = Phonemize(s, Cmu());
    const PhonemeSequence b = Phonemize(s, Cmu());
    EXPECT_EQ(a.ids, b.ids);
    EXPECT_EQ(DecodePhonemes(a.ids, Cmu().inventory()), a.symbols);
    EXPECT_EQ(a.symbols.back(), PhoneInventory::kEos);
    for (int id : a.ids) EXPECT_LT(id, Cmu().inventory().size());
  }
}

TextVocab SmallVocab() {
  return TextVocab({"<pad>", "<unk>", "<emo:amused>", "<emo:angry>", "<spk:Bee>",
                    "<spk:Sam>", "bea", "said", ":", "it's", "."});
}

TEST(TokenizeTest, SplitsOnWhitespaceAndPunctuation) {
  EXPECT_EQ(SplitContext("Bea said:"), (Symbols{"bea", "said", ":"}));
  EXPECT_EQ(SplitContext("it 's good solid food."),
            (Symbols{"it", "'s", "good", "solid", "food", "."}));
  EXPECT_EQ(SplitContext("It's a nice day."), (Symbols{"it's", "a", "nice", "day", "."}));
  EXPECT_TRUE(SplitContext("   ").empty());
}

TEST(TokenizeTest, Examples) {
  const TextVocab vocab = SmallVocab();
  EXPECT_TRUE(TokenizeContext("", vocab).empty());
  const TokenSequence seq = TokenizeContext("Bea said:", vocab);
  EXPECT_EQ(DecodeTokens(seq, vocab), (Symbols{"bea", "said", ":"}));
  EXPECT_EQ(TokenizeContext("zzzunknownzzz", vocab).ids, std::vector<int>{vocab.unk_id()});
  EXPECT_THROW(TokenizeContext("bea bea bea", vocab, 2), ValidationError);
}

TEST(EncodeLabelsTest, TwoReservedTokens) {
  const TextVocab vocab = SmallVocab();
  EXPECT_EQ(DecodeTokens(EncodeLabels("angry", "Sam", vocab), vocab),
            (Symbols{"<emo:angry>", "<spk:Sam>"}));
  EXPECT_EQ(DecodeTokens(EncodeLabels("amused", "Bee", vocab), vocab),
            (Symbols{"<emo:amused>", "<spk:Bee>"}));
  EXPECT_THROW(EncodeLabels("joy", "Bee", vocab), ValidationError);
  EXPECT_THROW(EncodeLabels("angry", "Nobody", vocab), ValidationError);
  EXPECT_EQ(EmotionMarker("angry"), "<emo:angry>");
  EXPECT_EQ(SpeakerMarker("Sam"), "<spk:Sam>");
}

TEST(BuildVocabTest, FrequencyThenLexicographic) {
  const TextVocab v = BuildVocab({"a a b"}, {"<pad>", "<unk>"});
  EXPECT_EQ(v.tokens(), (Symbols{"<pad>", "<unk>", "a", "b"}));
  const TextVocab w = BuildVocab({"c b", "b a c"}, {"<pad>", "<unk>"});
  EXPECT_EQ(w.tokens(), (Symbols{"<pad>", "<unk>", "b", "c", "a"}));
  EXPECT_THROW(BuildVocab({}, {"<pad>", "<unk>"}), ValidationError);
}

TEST(BuildVocabTest, SaveLoadRoundTrip) {
  const auto dir = testing_util::TempDir("vocab");
  const TextVocab v = BuildVocab({"Bea said: it's a nice day."}, {"<pad>", "<unk>"});
  v.Save(dir / "vocab.txt");
  const TextVocab loaded = TextVocab::Load(dir / "vocab.txt");
  EXPECT_EQ(loaded, v);
  EXPECT_EQ(loaded.Digest(), v.Digest());
  for (int id = 0; id < v.size(); ++id) EXPECT_EQ(loaded.Find(v.Token(id)), id);
}

TEST(BuildVocabTest, RejectsDuplicates) {
  EXPECT_ANY_THROW(TextVocab({"<pad>", "<unk>", "a", "a"}));
}

}  // namespace
}  // namespace ctts
