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

#ifndef CTTS_TRAIN_CHECKPOINT_H_
#define CTTS_TRAIN_CHECKPOINT_H_

#include <cstdint>
#include <filesystem>
#include <string>

#include "ctts/audio/mel.h"
#include "ctts/model/config.h"
#include "ctts/model/model.h"
#include "ctts/text/lexicon.h"
#include "ctts/text/vocab.h"
#include "ctts/train/optimizer.h"
#include "ctts/train/spec.h"
#include "json.hpp"

namespace ctts {

inline constexpr uint32_t kCheckpointVersion = 1;

// Text vocabulary and lexicon a model was trained with, plus where they live.
struct TrainingAssets {
  TextVocab vocab;
  Lexicon lexicon;
  std::filesystem::path vocab_path;
  std::filesystem::path lexicon_path;

  static TrainingAssets Load(const std::filesystem::path& vocab_path,
                             const std::filesystem::path& lexicon_path);
};

struct Checkpoint {
  ModelConfig model_config;
  MelConfig mel_config;
  ModelParams params;  // includes mel normalization stats
  AdamState optimizer;  // empty until the first update of a stage
  std::string stage;    // empty for freshly initialized parameters
  int64_t step = 0;     // updates completed within `stage`
  uint64_t seed = 0;
  std::string variant;
  ContextMode context_mode = ContextMode::kBlank;
  std::string vocab_path;
  std::string vocab_digest;
  std::string lexicon_path;
  std::string lexicon_digest;
  nlohmann::json metadata = nlohmann::json::object();
};

// Fresh parameters sized to the assets' vocabularies.
Checkpoint FreshCheckpoint(ModelConfig model_config, const MelConfig& mel_config,
                           const TrainingAssets& assets, uint64_t seed);

// Container: "CTCK", u32 version, u64 header length, JSON header (configs,
// bookkeeping, tensor manifest), u64 payload length, float64 tensor payload,
// then the hex SHA-256 of header and payload. Written atomically.
void SaveCheckpoint(const Checkpoint& ckpt, const std::filesystem::path& path);

// Throws LoadError on a bad magic, version mismatch, truncation, digest
// mismatch or tensors inconsistent with the stored config.
Checkpoint LoadCheckpoint(const std::filesystem::path& path);

// Throws LoadError if `assets` differ from what the checkpoint was trained
// with.
void VerifyAssets(const Checkpoint& ckpt, const TrainingAssets& assets);

// Loads the vocab and lexicon recorded in the checkpoint and verifies them.
TrainingAssets LoadCheckpointAssets(const Checkpoint& ckpt);

}  // namespace ctts

#endif  // CTTS_TRAIN_CHECKPOINT_H_
