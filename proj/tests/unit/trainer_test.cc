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

#include <cstring>
#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "ctts/common/error.h"
#include "ctts/dataset/manifest.h"
#include "ctts/train/checkpoint.h"
#include "ctts/train/pipeline.h"
#include "ctts/train/spec.h"
#include "ctts/train/trainer.h"
#include "test_util.h"
#include "toy_workspace.h"

namespace ctts {
namespace {

namespace fs = std::filesystem;
using testing_util::MakeToyWorkspace;
using testing_util::ToyModelConfig;
using testing_util::ToyWorkspace;

// Built once; the toy corpus takes a moment to render.
const ToyWorkspace& Workspace() {
  static const ToyWorkspace* w =
      new ToyWorkspace(MakeToyWorkspace(testing_util::TempDir("trainer_ws")));
  return *w;
}

std::vector<TrainingExample> Examples(ContextMode mode, size_t limit = 0) {
  const ToyWorkspace& w = Workspace();
  std::vector<CttsSample> rows;
  for (auto& r : ReadManifest(w.ctts_manifest)) {
    if (r.split == Split::kTrain) rows.push_back(r);
  }
  if (limit > 0 && rows.size() > limit) rows.resize(limit);
  return PrepareExamples(rows, mode, w.Assets(), testing_util::ToyMelConfig(),
                         ToyModelConfig().max_positions);
}

Checkpoint Fresh(uint64_t seed = 3) {
  return FreshCheckpoint(ToyModelConfig(), testing_util::ToyMelConfig(), Workspace().Assets(),
                         seed);
}

StageSpec Stage(const std::string& name, ContextMode mode, int max_steps) {
  StageSpec s;
  s.name = name;
  s.context_mode = mode;
  s.hparams.batch_size = 4;
  s.hparams.warmup_steps = 10;
  s.hparams.max_steps = max_steps;
  return s;
}

bool BitIdentical(const nn::ParameterSet& a, const nn::ParameterSet& b) {
  if (a.size() != b.size()) return false;
  for (int i = 0; i < a.size(); ++i) {
    if (a.Name(i) != b.Name(i) || a[i].size() != b[i].size()) return false;
    if (std::memcmp(a[i].data(), b[i].data(), sizeof(double) * a[i].size()) != 0) return false;
  }
  return true;
}

TEST(BatchIndicesTest, EachEpochIsAPermutation) {
  for (int64_t epoch = 0; epoch < 3; ++epoch) {
    std::multiset<int> seen;
    for (int64_t b = 0; b < 4; ++b) {
      for (int i : BatchIndices(10, 3, 5, epoch * 4 + b)) seen.insert(i);
    }
    EXPECT_EQ(seen.size(), 10u);
    EXPECT_EQ(std::set<int>(seen.begin(), seen.end()).size(), 10u);
  }
  EXPECT_EQ(BatchIndices(10, 3, 5, 3).size(), 1u);
  EXPECT_EQ(BatchIndices(10, 3, 5, 7), BatchIndices(10, 3, 5, 7));
  EXPECT_NE(BatchIndices(10, 3, 5, 0), BatchIndices(10, 3, 5, 4));
}

TEST(ContextIdsTest, ModeSelectsSource) {
  const TrainingAssets assets = Workspace().Assets();
  CttsSample s;
  s.context = "come on. alice said:";
  s.emotion = "angry";
  s.speaker = "alice";
  EXPECT_TRUE(ContextIds(s, ContextMode::kBlank, assets.vocab, 8).empty());
  EXPECT_EQ(ContextIds(s, ContextMode::kLabels, assets.vocab, 8).size(), 2u);
  EXPECT_EQ(ContextIds(s, ContextMode::kContext, assets.vocab, 8).size(), 6u);

  // Blank mode must not even look at the context.
  std::string huge;
  for (int i = 0; i < 100; ++i) huge += "word ";
  s.context = huge;
  s.speaker = "unregistered";
  EXPECT_TRUE(ContextIds(s, ContextMode::kBlank, assets.vocab, 8).empty());
  EXPECT_THROW(ContextIds(s, ContextMode::kContext, assets.vocab, 8), ValidationError);
  EXPECT_THROW(ContextIds(s, ContextMode::kLabels, assets.vocab, 8), ValidationError);
}

TEST(PrepareExamplesTest, NamesSampleOnAudioFailure) {
  CttsSample s;
  s.id = "broken#1";
  s.content = "go away";
  s.audio_path = (Workspace().dir / "nope.wav").string();
  s.split = Split::kTrain;
  try {
    PrepareExamples({s}, ContextMode::kBlank, Workspace().Assets(), testing_util::ToyMelConfig(),
                    64);
    FAIL();
  } catch (const TrainingError& e) {
    EXPECT_NE(std::string(e.what()).find("broken#1"), std::string::npos);
  }
}

TEST(PrepareExamplesTest, MelsAndStats) {
  const auto ex = Examples(ContextMode::kContext, 4);
  ASSERT_EQ(ex.size(), 4u);
  for (const auto& e : ex) {
    EXPECT_EQ(e.mel.cols(), testing_util::ToyMelConfig().n_mels);
    EXPECT_GT(e.mel.rows(), 5);
    EXPECT_FALSE(e.context_ids.empty());
    EXPECT_EQ(e.phone_ids.back(), PhoneInventory::Default().Id(PhoneInventory::kEos));
  }
  const MelStats stats = ComputeMelStats(ex);
  ASSERT_EQ(stats.mean.size(), 16u);
  std::vector<TrainingExample> copy = ex;
  double sum = 0.0, count = 0.0;
  for (auto& e : copy) {
    e.mel = stats.Normalize(e.mel);
    sum += e.mel.sum();
    count += e.mel.size();
  }
  EXPECT_NEAR(sum / count, 0.0, 1e-9);
}

TEST(TrainerTest, ZeroEpochsIsRejected) {
  StageSpec s = Stage(kStageTtsPretrain, ContextMode::kBlank, 0);
  s.hparams.epochs = 0;
  EXPECT_THROW(TrainOnExamples(s, Fresh(), 1, Examples(ContextMode::kBlank, 4)), ConfigError);
}

TEST(TrainerTest, LossDescendsOnFixedBatch) {
  StageSpec s = Stage(kStageTtsPretrain, ContextMode::kBlank, 100);
  TrainStats stats;
  TrainOnExamples(s, Fresh(), 1, Examples(ContextMode::kBlank, 4), {}, &stats);
  ASSERT_EQ(stats.log.size(), 100u);
  EXPECT_LT(stats.log.back().loss.total, stats.log.front().loss.total);
  EXPECT_EQ(stats.context_tokens_consumed, 0);
  for (const auto& entry : stats.log) {
    EXPECT_NEAR(entry.loss.total, entry.loss.mel_mse + 5.0 * entry.loss.stop_bce, 1e-9);
  }
}

TEST(TrainerTest, DeterministicGivenSeed) {
  StageSpec s = Stage(kStageTtsPretrain, ContextMode::kBlank, 5);
  const auto ex = Examples(ContextMode::kBlank, 6);
  const Checkpoint a = TrainOnExamples(s, Fresh(), 9, ex);
  const Checkpoint b = TrainOnExamples(s, Fresh(), 9, ex);
  const Checkpoint c = TrainOnExamples(s, Fresh(), 10, ex);
  EXPECT_TRUE(BitIdentical(a.params.tensors, b.params.tensors));
  EXPECT_FALSE(BitIdentical(a.params.tensors, c.params.tensors));
}

TEST(TrainerTest, FrozenGroupsStayPut) {
  StageSpec s = Stage(kStageCttsFinetune, ContextMode::kContext, 3);
  s.trainable = {"decoder", "postnet"};
  const Checkpoint start = Fresh();
  const Checkpoint out = TrainOnExamples(s, start, 2, Examples(ContextMode::kContext, 4));
  const auto& a = start.params.tensors;
  const auto& b = out.params.tensors;
  for (int i = 0; i < a.size(); ++i) {
    const bool same = a[i] == b[i];
    EXPECT_EQ(same, !s.IsTrainable(a.Name(i))) << a.Name(i);
  }
}

TEST(TrainerTest, ResumeMatchesUninterruptedRun) {
  const auto dir = testing_util::TempDir("resume");
  const auto ex = Examples(ContextMode::kContext);
  const int k = 3;
  StageSpec straight = Stage(kStageCttsFinetune, ContextMode::kContext, k + 1);
  const Checkpoint reference = TrainOnExamples(straight, Fresh(), 4, ex);

  StageSpec interrupted = Stage(kStageCttsFinetune, ContextMode::kContext, k + 5);
  interrupted.hparams.checkpoint_every = k;
  TrainOptions options;
  options.checkpoint_dir = dir;
  TrainOnExamples(interrupted, Fresh(), 4, ex, options);
  const Checkpoint at_k = LoadCheckpoint(dir / ("ctts_finetune-step" + std::to_string(k) + ".ckpt"));
  EXPECT_EQ(at_k.step, k);

  TrainStats stats;
  const Checkpoint resumed = TrainOnExamples(straight, at_k, 4, ex, {}, &stats);
  EXPECT_EQ(stats.steps_run, 1);
  EXPECT_EQ(resumed.step, k + 1);
  EXPECT_TRUE(BitIdentical(resumed.params.tensors, reference.params.tensors));
  EXPECT_TRUE(resumed.optimizer == reference.optimizer);
}

TEST(TrainerTest, TrainStageUsesOnlyTrainRows) {
  const ToyWorkspace& w = Workspace();
  StageSpec s = Stage(kStageCttsFinetune, ContextMode::kContext, 2);
  s.manifest = w.ctts_manifest;
  TrainStats stats;
  const Checkpoint out = TrainStage(s, Fresh(), 1, w.Assets(), {}, &stats);
  size_t train_rows = 0;
  for (const auto& r : ReadManifest(w.ctts_manifest)) train_rows += r.split == Split::kTrain;
  EXPECT_EQ(out.metadata["training"][kStageCttsFinetune]["examples"].get<size_t>(), train_rows);
  EXPECT_GT(stats.context_tokens_consumed, 0);
}

TEST(TrainerTest, RejectsMismatchedAssets) {
  const ToyWorkspace& w = Workspace();
  StageSpec s = Stage(kStageTtsPretrain, ContextMode::kBlank, 1);
  s.manifest = w.speech_manifest;
  const auto dir = testing_util::TempDir("assets_mismatch");
  TextVocab({"<pad>", "<unk>"}).Save(dir / "v.txt");
  EXPECT_THROW(TrainStage(s, Fresh(), 1, TrainingAssets::Load(dir / "v.txt", w.lexicon)),
               LoadError);
}

TEST(PipelineTest, VocabLayout) {
  const TextVocab v = BuildTrainingVocab(ReadManifest(Workspace().ctts_manifest));
  ASSERT_GE(v.size(), 6);
  EXPECT_EQ(v.Token(0), "<pad>");
  EXPECT_EQ(v.Token(1), "<unk>");
  EXPECT_EQ(v.Token(2), "<emo:amused>");
  EXPECT_EQ(v.Token(3), "<emo:angry>");
  EXPECT_EQ(v.Token(4), "<spk:alice>");
  EXPECT_EQ(v.Token(5), "<spk:bob>");
  EXPECT_TRUE(v.Contains("said"));
}

class PipelineVariantTest : public ::testing::TestWithParam<const char*> {};

TEST_P(PipelineVariantTest, RunsStagesForVariant) {
  const std::string name = GetParam();
  const ToyWorkspace& w = Workspace();
  PipelineConfig cfg = w.Pipeline(ToyModelConfig(), 3, 11);
  cfg.out_dir = testing_util::TempDir("pipeline_" + name);
  PipelineReport report;
  const Checkpoint out = RunPipeline(VariantSpec::ForName(name), cfg, &report);
  EXPECT_EQ(out.variant, name);
  EXPECT_EQ(report.pretrain.steps_run, 3);
  EXPECT_EQ(report.pretrain.context_tokens_consumed, 0);
  EXPECT_TRUE(fs::exists(cfg.out_dir / name / "tts_pretrain.ckpt"));
  if (name == kVariantTts) {
    EXPECT_EQ(out.stage, kStageTtsPretrain);
    EXPECT_EQ(report.finetune.steps_run, 0);
    return;
  }
  EXPECT_EQ(out.stage, kStageCttsFinetune);
  EXPECT_EQ(report.finetune.steps_run, 3);
  EXPECT_TRUE(fs::exists(cfg.out_dir / name / "ctts_finetune.ckpt"));
  if (name == kVariantLtts) {
    ASSERT_EQ(report.finetune.context_lengths.size(), 1u);
    EXPECT_EQ(report.finetune.context_lengths.begin()->first, 2);
  } else {
    EXPECT_GT(report.finetune.context_tokens_consumed, 0);
  }
  if (name == kVariantCtts) {
    EXPECT_DOUBLE_EQ(report.import_hit_rate, 1.0);
    EXPECT_DOUBLE_EQ(out.metadata["import"]["hit_rate"].get<double>(), 1.0);
    EXPECT_TRUE(fs::exists(cfg.out_dir / name / "embed_init.ckpt"));
  } else {
    EXPECT_LT(report.import_hit_rate, 0.0);
  }
}

INSTANTIATE_TEST_SUITE_P(AllVariants, PipelineVariantTest,
                         ::testing::Values(kVariantTts, kVariantLtts, kVariantCttsNt,
                                           kVariantCtts),
                         [](const auto& info) {
                           std::string n = info.param;
                           for (auto& c : n) {
                             if (c == '-') c = '_';
                           }
                           return n;
                         });

TEST(PipelineTest, FreezeKeepsImportedTable) {
  const ToyWorkspace& w = Workspace();
  PipelineConfig cfg = w.Pipeline(ToyModelConfig(), 2, 5);
  cfg.out_dir = testing_util::TempDir("pipeline_freeze");
  cfg.freeze_imported_embeddings = true;
  const Checkpoint out = RunPipeline(VariantSpec::ForName(kVariantCtts), cfg);
  const Checkpoint imported = LoadCheckpoint(cfg.out_dir / kVariantCtts / "embed_init.ckpt");
  EXPECT_TRUE(out.params.text_embedding() == imported.params.text_embedding());
  EXPECT_FALSE(out.params.tensors.Get("dec.mel.w") == imported.params.tensors.Get("dec.mel.w"));
}

TEST(PipelineTest, MissingBundleIsConfigError) {
  PipelineConfig cfg = Workspace().Pipeline(ToyModelConfig(), 1, 5);
  cfg.embedding_bundle.clear();
  cfg.out_dir = testing_util::TempDir("pipeline_nobundle");
  EXPECT_THROW(RunPipeline(VariantSpec::ForName(kVariantCtts), cfg), ConfigError);
}

}  // namespace
}  // namespace ctts
