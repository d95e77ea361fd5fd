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

#include "ctts/train/pipeline.h"

#include <algorithm>
#include <set>

#include <spdlog/spdlog.h>

#include "ctts/common/error.h"
#include "ctts/common/random.h"
#include "ctts/dataset/manifest.h"
#include "ctts/train/embedding.h"

namespace ctts {

TextVocab BuildTrainingVocab(const std::vector<CttsSample>& rows) {
  std::set<std::string> emotions;
  std::set<std::string> speakers;
  std::vector<std::string> corpus;
  for (const auto& r : rows) {
    emotions.insert(r.emotion);
    speakers.insert(r.speaker);
    if (r.split == Split::kTrain && !r.context.empty()) corpus.push_back(r.context);
  }
  std::vector<std::string> reserved = {TextVocab::kPad, TextVocab::kUnk};
  for (const auto& e : emotions) reserved.push_back(EmotionMarker(e));
  for (const auto& s : speakers) reserved.push_back(SpeakerMarker(s));
  if (corpus.empty()) return TextVocab(reserved);
  return BuildVocab(corpus, reserved);
}

Checkpoint RunPipeline(const VariantSpec& variant, const PipelineConfig& config,
                       PipelineReport* report) {
  variant.Validate();
  const bool finetunes = variant.name != kVariantTts;
  if (finetunes && config.finetune.manifest.empty()) {
    throw ConfigError("variant " + variant.name + " needs a finetune manifest");
  }
  if (variant.use_pretrained_text_embeddings && config.embedding_bundle.empty()) {
    throw ConfigError("variant " + variant.name + " needs an embedding bundle");
  }
  const std::filesystem::path dir = config.out_dir / variant.name;
  std::filesystem::create_directories(dir);

  std::filesystem::path vocab_path = config.vocab;
  if (vocab_path.empty()) {
    std::vector<CttsSample> rows;
    if (!config.finetune.manifest.empty()) rows = ReadManifest(config.finetune.manifest);
    vocab_path = config.out_dir / "vocab.txt";
    BuildTrainingVocab(rows).Save(vocab_path);
  }
  const TrainingAssets assets = TrainingAssets::Load(vocab_path, config.lexicon);

  PipelineReport local;
  PipelineReport& rep = report != nullptr ? *report : local;
  TrainOptions options;
  options.checkpoint_dir = dir;

  Checkpoint ckpt = FreshCheckpoint(config.model, config.mel, assets, config.seed);
  ckpt.variant = variant.name;

  StageSpec pretrain = config.pretrain;
  pretrain.name = kStageTtsPretrain;
  pretrain.context_mode = ContextMode::kBlank;
  spdlog::info("{}: stage {}", variant.name, pretrain.name);
  ckpt = TrainStage(pretrain, ckpt, CombineSeeds(config.seed, 1), assets, options,
                    &rep.pretrain);
  if (!finetunes) return ckpt;

  if (variant.use_pretrained_text_embeddings) {
    spdlog::info("{}: stage {}", variant.name, kStageEmbedInit);
    ckpt = ImportTextEmbeddings(ckpt, assets.vocab, LoadEmbeddingBundle(config.embedding_bundle));
    rep.import_hit_rate = ckpt.metadata["import"]["hit_rate"].get<double>();
    SaveCheckpoint(ckpt, dir / (std::string(kStageEmbedInit) + ".ckpt"));
  }

  StageSpec finetune = config.finetune;
  finetune.name = kStageCttsFinetune;
  finetune.context_mode = variant.context_mode;
  if (variant.use_pretrained_text_embeddings && config.freeze_imported_embeddings) {
    std::vector<std::string> groups = finetune.trainable;
    if (groups.empty()) groups.assign(std::begin(kTrainableGroups), std::end(kTrainableGroups));
    groups.erase(std::remove(groups.begin(), groups.end(), "text_embedding"), groups.end());
    finetune.trainable = groups;
  }
  spdlog::info("{}: stage {}", variant.name, finetune.name);
  return TrainStage(finetune, ckpt, CombineSeeds(config.seed, 3), assets, options,
                    &rep.finetune);
}

}  // namespace ctts
