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

#include "ctts/train/spec.h"

#include <algorithm>

#include "ctts/common/error.h"
#include "ctts/common/json_util.h"

namespace ctts {

const char* ContextModeName(ContextMode mode) {
  switch (mode) {
    case ContextMode::kBlank: return "blank";
    case ContextMode::kContext: return "context";
    case ContextMode::kLabels: return "labels";
  }
  return "blank";
}

ContextMode ParseContextMode(const std::string& name) {
  if (name == "blank") return ContextMode::kBlank;
  if (name == "context") return ContextMode::kContext;
  if (name == "labels") return ContextMode::kLabels;
  throw ConfigError("unknown context mode '" + name + "' (expected blank, context or labels)");
}

std::string ParamGroup(const std::string& tensor_name) {
  if (tensor_name.rfind("enc.", 0) == 0) return "encoder";
  if (tensor_name.rfind("dec.", 0) == 0) return "decoder";
  if (tensor_name.rfind("postnet.", 0) == 0) return "postnet";
  return tensor_name;
}

void to_json(nlohmann::json& j, const Hyperparams& h) {
  j = {{"learning_rate", h.learning_rate}, {"batch_size", h.batch_size},
       {"epochs", h.epochs},               {"grad_clip", h.grad_clip},
       {"warmup_steps", h.warmup_steps},   {"stop_weight", h.stop_weight},
       {"adam_beta1", h.adam_beta1},       {"adam_beta2", h.adam_beta2},
       {"adam_eps", h.adam_eps},           {"max_steps", h.max_steps},
       {"checkpoint_every", h.checkpoint_every}};
}

void from_json(const nlohmann::json& j, Hyperparams& h) {
  const std::string s = "hparams";
  RejectUnknownKeys(j, {"learning_rate", "batch_size", "epochs", "grad_clip", "warmup_steps",
                        "stop_weight", "adam_beta1", "adam_beta2", "adam_eps", "max_steps",
                        "checkpoint_every"},
                    s);
  ReadOptional(j, "learning_rate", s, &h.learning_rate);
  ReadOptional(j, "batch_size", s, &h.batch_size);
  ReadOptional(j, "epochs", s, &h.epochs);
  ReadOptional(j, "grad_clip", s, &h.grad_clip);
  ReadOptional(j, "warmup_steps", s, &h.warmup_steps);
  ReadOptional(j, "stop_weight", s, &h.stop_weight);
  ReadOptional(j, "adam_beta1", s, &h.adam_beta1);
  ReadOptional(j, "adam_beta2", s, &h.adam_beta2);
  ReadOptional(j, "adam_eps", s, &h.adam_eps);
  ReadOptional(j, "max_steps", s, &h.max_steps);
  ReadOptional(j, "checkpoint_every", s, &h.checkpoint_every);
}

void StageSpec::Validate() const {
  if (name != kStageTtsPretrain && name != kStageEmbedInit && name != kStageCttsFinetune) {
    throw ConfigError("unknown stage name '" + name + "'");
  }
  if (name == kStageTtsPretrain && context_mode != ContextMode::kBlank) {
    throw ConfigError("stage tts_pretrain requires context_mode blank");
  }
  for (const auto& group : trainable) {
    if (std::find(std::begin(kTrainableGroups), std::end(kTrainableGroups), group) ==
        std::end(kTrainableGroups)) {
      throw ConfigError("stage " + name + ": unknown trainable group '" + group + "'");
    }
  }
  const Hyperparams& h = hparams;
  if (h.epochs < 1) throw ConfigError("stage " + name + ": epochs must be >= 1");
  if (h.batch_size < 1) throw ConfigError("stage " + name + ": batch_size must be >= 1");
  if (!(h.learning_rate > 0.0)) throw ConfigError("stage " + name + ": learning_rate must be > 0");
  if (h.warmup_steps < 0 || h.max_steps < 0 || h.checkpoint_every < 0) {
    throw ConfigError("stage " + name + ": step counts must be >= 0");
  }
  if (!(h.stop_weight >= 0.0)) throw ConfigError("stage " + name + ": stop_weight must be >= 0");
  if (!(h.adam_beta1 >= 0.0 && h.adam_beta1 < 1.0) ||
      !(h.adam_beta2 >= 0.0 && h.adam_beta2 < 1.0) || !(h.adam_eps > 0.0)) {
    throw ConfigError("stage " + name + ": invalid optimizer settings");
  }
}

bool StageSpec::IsTrainable(const std::string& tensor_name) const {
  if (trainable.empty()) return true;
  return std::find(trainable.begin(), trainable.end(), ParamGroup(tensor_name)) !=
         trainable.end();
}

VariantSpec VariantSpec::ForName(const std::string& name) {
  VariantSpec v;
  v.name = name;
  if (name == kVariantCtts) {
    v.context_mode = ContextMode::kContext;
    v.use_pretrained_text_embeddings = true;
  } else if (name == kVariantCttsNt) {
    v.context_mode = ContextMode::kContext;
  } else if (name == kVariantLtts) {
    v.context_mode = ContextMode::kLabels;
  } else if (name != kVariantTts) {
    throw ConfigError("unknown variant '" + name +
                      "' (expected M-CTTS, M-TTS, M-LTTS or M-CTTS-NT)");
  }
  return v;
}

void VariantSpec::Validate() const {
  const VariantSpec canonical = ForName(name);
  if (canonical.context_mode != context_mode ||
      canonical.use_pretrained_text_embeddings != use_pretrained_text_embeddings) {
    throw ConfigError(std::string("variant ") + name + " requires context_mode " +
                      ContextModeName(canonical.context_mode) +
                      " and use_pretrained_text_embeddings " +
                      (canonical.use_pretrained_text_embeddings ? "true" : "false"));
  }
}

}  // namespace ctts
