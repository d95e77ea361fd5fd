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

#ifndef CTTS_TRAIN_PIPELINE_H_
#define CTTS_TRAIN_PIPELINE_H_

#include <cstdint>
#include <filesystem>
#include <vector>

#include "ctts/audio/mel.h"
#include "ctts/dataset/types.h"
#include "ctts/model/config.h"
#include "ctts/train/checkpoint.h"
#include "ctts/train/spec.h"
#include "ctts/train/trainer.h"

namespace ctts {

struct PipelineConfig {
  ModelConfig model;
  MelConfig mel;
  StageSpec pretrain;  // run as tts_pretrain with blank context
  StageSpec finetune;  // run as ctts_finetune in the variant's context mode
  std::filesystem::path embedding_bundle;  // required by M-CTTS
  bool freeze_imported_embeddings = false;
  std::filesystem::path lexicon;
  // Empty: built from the finetune manifest and written to out_dir/vocab.txt.
  std::filesystem::path vocab;
  std::filesystem::path out_dir;
  uint64_t seed = 0;
};

struct PipelineReport {
  TrainStats pretrain;
  TrainStats finetune;
  double import_hit_rate = -1.0;  // -1: no import ran
};

// Context vocabulary for a CTTS manifest: <pad>, <unk>, the emotion and
// speaker markers of every row, then tokens of the train-split contexts.
TextVocab BuildTrainingVocab(const std::vector<CttsSample>& rows);

// Runs the stages a variant calls for and writes one checkpoint per stage
// under out_dir/<variant>/.
//   M-TTS:     tts_pretrain
//   M-LTTS:    tts_pretrain -> ctts_finetune (labels)
//   M-CTTS-NT: tts_pretrain -> ctts_finetune (context)
//   M-CTTS:    tts_pretrain -> embed_init -> ctts_finetune (context)
Checkpoint RunPipeline(const VariantSpec& variant, const PipelineConfig& config,
                       PipelineReport* report = nullptr);

}  // namespace ctts

#endif  // CTTS_TRAIN_PIPELINE_H_
