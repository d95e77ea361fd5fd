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

#ifndef CTTS_TRAIN_SPEC_H_
#define CTTS_TRAIN_SPEC_H_

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

namespace ctts {

// What the encoder sees as context C.
enum class ContextMode { kBlank, kContext, kLabels };

const char* ContextModeName(ContextMode mode);
// Throws ConfigError for anything but "blank", "context", "labels".
ContextMode ParseContextMode(const std::string& name);

inline constexpr const char* kStageTtsPretrain = "tts_pretrain";
inline constexpr const char* kStageEmbedInit = "embed_init";
inline constexpr const char* kStageCttsFinetune = "ctts_finetune";

// Parameter groups a stage may update.
inline constexpr const char* kTrainableGroups[] = {
    "text_embedding", "phone_embedding", "segment_embedding", "encoder", "decoder", "postnet"};

// Group of a model tensor name, e.g. "enc.0.attn.q.w" -> "encoder".
std::string ParamGroup(const std::string& tensor_name);

struct Hyperparams {
  double learning_rate = 1e-3;  // peak
  int batch_size = 8;
  int epochs = 800;
  double grad_clip = 1.0;  // global norm; <= 0 disables
  int warmup_steps = 4000;
  double stop_weight = 5.0;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.98;
  double adam_eps = 1e-9;
  int max_steps = 0;         // 0: epochs * batches only
  int checkpoint_every = 0;  // 0: final checkpoint only

  bool operator==(const Hyperparams&) const = default;
};

void to_json(nlohmann::json& j, const Hyperparams& h);
void from_json(const nlohmann::json& j, Hyperparams& h);

struct StageSpec {
  std::string name = kStageTtsPretrain;
  std::filesystem::path manifest;
  ContextMode context_mode = ContextMode::kBlank;
  std::vector<std::string> trainable;  // empty: every group
  Hyperparams hparams;

  // Throws ConfigError: unknown name or group, tts_pretrain without blank
  // context, epochs < 1, non-positive batch size or learning rate.
  void Validate() const;
  bool IsTrainable(const std::string& tensor_name) const;
};

inline constexpr const char* kVariantCtts = "M-CTTS";
inline constexpr const char* kVariantTts = "M-TTS";
inline constexpr const char* kVariantLtts = "M-LTTS";
inline constexpr const char* kVariantCttsNt = "M-CTTS-NT";

struct VariantSpec {
  std::string name;
  ContextMode context_mode = ContextMode::kBlank;
  bool use_pretrained_text_embeddings = false;

  // The canonical spec for one of the four variant names.
  static VariantSpec ForName(const std::string& name);
  // Throws ConfigError unless (name, mode, flag) is one of the four
  // canonical combinations.
  void Validate() const;
};

}  // namespace ctts

#endif  // CTTS_TRAIN_SPEC_H_
