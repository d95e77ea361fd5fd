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

#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "ctts/cli/cli.h"
#include "ctts/cli/tool_config.h"
#include "ctts/common/error.h"
#include "ctts/common/file_util.h"
#include "ctts/common/string_util.h"
#include "json.hpp"
#include "test_util.h"

namespace ctts {
namespace {

namespace fs = std::filesystem;

struct CliResult {
  int code = -1;
  std::string out;
  std::string err;
};

CliResult Cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  CliResult r;
  r.code = RunCli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

bool Contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

// toy-corpus + build-data in a fresh directory, shared by the tests below.
const fs::path& ToyDir() {
  static const fs::path* dir = [] {
    auto* d = new fs::path(testing_util::TempDir("cli_toy"));
    const CliResult toy = Cli({"-q", "toy-corpus", "--out", d->string()});
    EXPECT_EQ(toy.code, 0) << toy.err;
    const CliResult build = Cli({"-q", "build-data", "--config", (*d / "toy.json").string(), "--out",
                           (*d / "data").string(), "--seed", "7"});
    EXPECT_EQ(build.code, 0) << build.err;
    return d;
  }();
  return *dir;
}

TEST(CliTest, UnknownSubcommandIsUsageError) {
  const CliResult r = Cli({"frobnicate"});
  EXPECT_EQ(r.code, kExitUserError);
  EXPECT_TRUE(Contains(r.err, "build-data"));
  EXPECT_EQ(Cli({}).code, kExitUserError);
  EXPECT_EQ(Cli({"train", "--variant", "M-TTS"}).code, kExitUserError);
}

TEST(CliTest, HelpSucceeds) {
  const CliResult r = Cli({"--help"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_TRUE(Contains(r.out, "synth"));
}

TEST(CliTest, BuildDataIsDeterministic) {
  const fs::path& dir = ToyDir();
  const CliResult again = Cli({"-q", "build-data", "--config", (dir / "toy.json").string(), "--out",
                         (dir / "data2").string(), "--seed", "7"});
  ASSERT_EQ(again.code, 0) << again.err;
  for (const char* f : {"ctts.jsonl", "train.jsonl", "valid.jsonl", "test.jsonl"}) {
    EXPECT_EQ(ReadFileToString(dir / "data" / f), ReadFileToString(dir / "data2" / f)) << f;
  }
  EXPECT_TRUE(Contains(again.out, "rows ")) << again.out;
}

TEST(CliTest, BuildDataFlagsOverrideConfig) {
  const fs::path& dir = ToyDir();
  const CliResult flags = Cli({"-q", "build-data", "--speech", (dir / "speech.jsonl").string(),
                               "--texts", (dir / "texts.jsonl").string(), "--out",
                               (dir / "data3").string(), "--seed", "7"});
  ASSERT_EQ(flags.code, 0) << flags.err;
  EXPECT_EQ(ReadFileToString(dir / "data" / "ctts.jsonl"),
            ReadFileToString(dir / "data3" / "ctts.jsonl"));
  const CliResult missing = Cli({"-q", "build-data", "--out", (dir / "data4").string()});
  EXPECT_EQ(missing.code, kExitUserError);
}

TEST(CliTest, InspectManifestAndMel) {
  const fs::path& dir = ToyDir();
  const CliResult m = Cli({"-q", "inspect", "manifest", (dir / "data" / "ctts.jsonl").string()});
  ASSERT_EQ(m.code, 0) << m.err;
  EXPECT_TRUE(Contains(m.out, "24"));

  const fs::path ws = testing_util::TempDir("cli_inspect");
  const CliResult bad = Cli({"-q", "inspect", "mel", (ws / "missing.mel").string()});
  EXPECT_NE(bad.code, 0);
  EXPECT_EQ(Cli({"-q", "inspect", "thing", (ws / "x").string()}).code, kExitUserError);
}

TEST(CliTest, TrainSynthInspectEval) {
  const fs::path& dir = ToyDir();
  const fs::path runs = testing_util::TempDir("cli_runs");
  const CliResult train = Cli({"-q", "train", "--variant", "M-LTTS", "--config",
                         (dir / "toy.json").string(), "--out", runs.string(), "--max-steps", "2"});
  ASSERT_EQ(train.code, 0) << train.err;
  const fs::path ckpt = runs / "M-LTTS" / "ctts_finetune.ckpt";
  ASSERT_TRUE(fs::exists(ckpt));

  const CliResult info = Cli({"-q", "inspect", "ckpt", ckpt.string()});
  ASSERT_EQ(info.code, 0) << info.err;
  EXPECT_TRUE(Contains(info.out, "ctts_finetune"));
  EXPECT_TRUE(Contains(info.out, "labels"));

  const fs::path wav = runs / "out" / "go.wav";
  const CliResult synth = Cli({"-q", "synth", "--ckpt", ckpt.string(), "--content", "Go away!",
                         "--emotion", "angry", "--speaker", "alice", "--max-frames", "8",
                         "--out", wav.string()});
  ASSERT_EQ(synth.code, 0) << synth.err;
  EXPECT_TRUE(fs::exists(wav));
  EXPECT_TRUE(fs::exists(runs / "out" / "go.json"));

  const CliResult mel = Cli({"-q", "inspect", "mel", (runs / "out" / "go.mel").string()});
  ASSERT_EQ(mel.code, 0) << mel.err;
  EXPECT_TRUE(Contains(mel.out, "n_mels 80"));
  EXPECT_TRUE(Contains(mel.out, "n_frames"));
  EXPECT_TRUE(Contains(mel.out, "hop 256"));

  const CliResult nolabels = Cli({"-q", "synth", "--ckpt", ckpt.string(), "--content", "Go away!",
                            "--out", (runs / "x.wav").string()});
  EXPECT_EQ(nolabels.code, kExitUserError);

  const CliResult missing = Cli({"-q", "synth", "--ckpt", (runs / "none.ckpt").string(), "--content",
                           "hi", "--out", (runs / "y.wav").string()});
  EXPECT_EQ(missing.code, kExitRuntimeError);

  const std::string asr = ShellQuote(ASR_SIDECAR_STUB) + " {wav} " +
                          ShellQuote((dir / "data" / "ctts.jsonl").string());
  const fs::path report = runs / "report.json";
  const CliResult eval = Cli({"-q", "eval", "--manifest", (dir / "data" / "ctts.jsonl").string(),
                        "--variants", "M-LTTS=" + ckpt.string(), "--asr", asr, "--max-frames",
                        "4", "--out", report.string()});
  ASSERT_EQ(eval.code, 0) << eval.err;
  const auto j = nlohmann::json::parse(ReadFileToString(report));
  EXPECT_TRUE(Contains(j["table"].get<std::string>(), "paper, not reproduced"));
  EXPECT_TRUE(Contains(eval.out, "M-LTTS"));
}

TEST(CliTest, ConfigErrorsNameTheKey) {
  const fs::path dir = testing_util::TempDir("cli_config");
  WriteFileAtomic(dir / "c.json", R"({"model": {"d_model": 64, "n_layerz": 2}})");
  const CliResult r = Cli({"build-data", "--config", (dir / "c.json").string(), "--out",
                     (dir / "o").string()});
  EXPECT_EQ(r.code, kExitUserError);
  EXPECT_TRUE(Contains(r.err, "model.n_layerz")) << r.err;

  WriteFileAtomic(dir / "bad.json", "{ not json");
  EXPECT_EQ(Cli({"build-data", "--config", (dir / "bad.json").string(), "--out",
                 (dir / "o").string()})
                .code,
            kExitUserError);
  EXPECT_THROW(ToolConfig::Load(dir / "c.json"), ConfigError);
}

TEST(CliTest, ConfigPathsResolveAgainstConfigDir) {
  const fs::path dir = testing_util::TempDir("cli_paths");
  fs::create_directories(dir / "cfg");
  WriteFileAtomic(dir / "cfg" / "c.json",
                  R"({"dataset": {"speech_manifest": "../s.jsonl", "fanout": 2},
                      "assets": {"vocab": "v.txt"}, "seed": 9})");
  const ToolConfig c = ToolConfig::Load(dir / "cfg" / "c.json");
  EXPECT_EQ(fs::weakly_canonical(c.dataset.speech_manifest), fs::weakly_canonical(dir / "s.jsonl"));
  EXPECT_EQ(c.vocab, dir / "cfg" / "v.txt");
  EXPECT_EQ(c.dataset.fanout, 2);
  EXPECT_EQ(c.seed, 9u);
  EXPECT_EQ(c.lexicon, DefaultLexiconPath());
}

TEST(CliTest, ExampleConfigLoads) {
  EXPECT_NO_THROW(ToolConfig::Load(testing_util::SourceDir() / "config" / "example.json"));
}

}  // namespace
}  // namespace ctts
