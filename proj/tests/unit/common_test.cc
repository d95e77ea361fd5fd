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

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "ctts/common/error.h"
#include "ctts/common/file_util.h"
#include "ctts/common/process.h"
#include "ctts/common/random.h"
#include "ctts/common/string_util.h"
#include "test_util.h"

namespace ctts {
namespace {

TEST(StringUtilTest, TrimAndCase) {
  EXPECT_EQ(Trim("  a b \t\n"), "a b");
  EXPECT_EQ(Trim("   "), "");
  EXPECT_EQ(ToLower("Go AWAY"), "go away");
  EXPECT_EQ(ToUpper("canoe's"), "CANOE'S");
}

TEST(StringUtilTest, SplitJoinCollapse) {
  EXPECT_EQ(SplitWhitespace("  a  b\tc\n"), (std::vector<std::string>{"a", "b", "c"}));
  EXPECT_TRUE(SplitWhitespace(" \t ").empty());
  EXPECT_EQ(Join({"a", "b", "c"}, ", "), "a, b, c");
  EXPECT_EQ(CollapseSpaces("  x   y  "), "x y");
}

TEST(StringUtilTest, ReplaceAll) {
  std::string s = "{a}-{a}-{b}";
  ReplaceAll(&s, "{a}", "aa{a}");
  EXPECT_EQ(s, "aa{a}-aa{a}-{b}");
  ReplaceAll(&s, "", "x");
  EXPECT_EQ(s, "aa{a}-aa{a}-{b}");
}

TEST(RandomTest, Fnv1aKnownValues) {
  EXPECT_EQ(Fnv1a64(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(Fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
}

TEST(RandomTest, StreamsAreReproducible) {
  Rng a(42), b(42), c(43);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const uint64_t x = a.NextU64();
    EXPECT_EQ(x, b.NextU64());
    differs |= x != c.NextU64();
  }
  EXPECT_TRUE(differs);
}

TEST(RandomTest, UniformStaysInRange) {
  Rng rng(7);
  std::set<uint64_t> seen;
  for (int i = 0; i < 2000; ++i) {
    const uint64_t v = rng.Uniform(5);
    ASSERT_LT(v, 5u);
    seen.insert(v);
    const double d = rng.UniformDouble();
    ASSERT_GE(d, 0.0);
    ASSERT_LT(d, 1.0);
  }
  EXPECT_EQ(seen.size(), 5u);
}

TEST(RandomTest, NormalMoments) {
  Rng rng(1);
  const int n = 20000;
  double sum = 0, sq = 0;
  for (int i = 0; i < n; ++i) {
    const double x = rng.Normal();
    sum += x;
    sq += x * x;
  }
  EXPECT_NEAR(sum / n, 0.0, 0.05);
  EXPECT_NEAR(sq / n, 1.0, 0.05);
}

TEST(RandomTest, ShuffleIsPermutation) {
  std::vector<int> v(50);
  for (int i = 0; i < 50; ++i) v[i] = i;
  Rng rng(3);
  rng.Shuffle(&v);
  std::vector<int> sorted = v;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < 50; ++i) EXPECT_EQ(sorted[i], i);
  EXPECT_NE(v, sorted);
}

TEST(RandomTest, CombineSeedsOrderMatters) {
  EXPECT_NE(CombineSeeds(1, 2), CombineSeeds(2, 1));
  EXPECT_EQ(CombineSeeds(1, 2, 3), CombineSeeds(CombineSeeds(1, 2), 3));
}

TEST(FileUtilTest, AtomicWriteAndRead) {
  const auto dir = testing_util::TempDir("file_util");
  const auto path = dir / "sub" / "x.bin";
  std::filesystem::create_directories(path.parent_path());
  const std::string bytes("a\0b\nc", 5);
  WriteFileAtomic(path, bytes);
  EXPECT_EQ(ReadFileToString(path), bytes);
  WriteFileAtomic(path, "second");
  EXPECT_EQ(ReadFileToString(path), "second");
  EXPECT_THROW(ReadFileToString(dir / "missing"), IoError);
}

TEST(FileUtilTest, Sha256KnownDigest) {
  EXPECT_EQ(Sha256Hex("abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  const auto dir = testing_util::TempDir("sha");
  WriteFileAtomic(dir / "f", "abc");
  EXPECT_EQ(FileSha256(dir / "f"), Sha256Hex("abc"));
}

TEST(FileUtilTest, ResolvePath) {
  EXPECT_EQ(ResolvePath("/base", "a/b"), std::filesystem::path("/base/a/b"));
  EXPECT_EQ(ResolvePath("/base", "/abs"), std::filesystem::path("/abs"));
}

TEST(FileUtilTest, ScopedTempDirIsRemoved) {
  std::filesystem::path p;
  {
    ScopedTempDir tmp("unit");
    p = tmp.path();
    EXPECT_TRUE(std::filesystem::is_directory(p));
    WriteFileAtomic(p / "f", "x");
  }
  EXPECT_FALSE(std::filesystem::exists(p));
}

TEST(ProcessTest, CapturesOutputAndExitCode) {
  const CommandResult ok = RunCommand("printf hello; printf oops >&2");
  EXPECT_EQ(ok.exit_code, 0);
  EXPECT_EQ(ok.stdout_text, "hello");
  EXPECT_EQ(ok.stderr_text, "oops");
  EXPECT_EQ(RunCommand("exit 3").exit_code, 3);
  EXPECT_NE(RunCommand("false").exit_code, 0);
}

TEST(ProcessTest, ShellQuoteSurvivesRoundTrip) {
  const std::string tricky = "it's a $HOME \"x\"";
  const CommandResult r = RunCommand("printf %s " + ShellQuote(tricky));
  EXPECT_EQ(r.stdout_text, tricky);
}

TEST(ErrorTest, UserErrorClassification) {
  EXPECT_TRUE(ValidationError("x").UserError());
  EXPECT_TRUE(ConfigError("x").UserError());
  EXPECT_TRUE(ParseError("x").UserError());
  EXPECT_TRUE(FormatError("x").UserError());
  EXPECT_FALSE(IoError("x").UserError());
  EXPECT_FALSE(TrainingError("x").UserError());
  EXPECT_FALSE(BackendError("x").UserError());
}

}  // namespace
}  // namespace ctts
