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

#ifndef CTTS_TESTS_SUPPORT_TOY_WORKSPACE_H_
#define CTTS_TESTS_SUPPORT_TOY_WORKSPACE_H_

#include <filesystem>
#include <string>

#include "ctts/audio/mel.h"
#include "ctts/model/config.h"
#include "ctts/train/checkpoint.h"
#include "ctts/train/pipeline.h"
#include "ctts/train/toy_voice.h"

namespace ctts {
namespace testing_util {

std::filesystem::path SourceLexiconPath();

// Small, fast mel recipe for toy audio at 8 kHz.
MelConfig ToyMelConfig();

// Two-layer model sized for desk-scale runs over ToyMelConfig().
ModelConfig ToyModelConfig(int d_model = 32);

// Toy corpus written to `dir`, joined into a CTTS dataset, with the training
// vocab and a bundle covering all of it.
struct ToyWorkspace {
  std::filesystem::path dir;
  std::filesystem::path speech_manifest;
  std::filesystem::path text_corpus;
  std::filesystem::path ctts_manifest;
  std::filesystem::path vocab;
  std::filesystem::path lexicon;
  std::filesystem::path bundle;
  int bundle_width = 0;

  TrainingAssets Assets() const { return TrainingAssets::Load(vocab, lexicon); }
  // Pipeline settings over this workspace with short stages.
  PipelineConfig Pipeline(const ModelConfig& model, int max_steps, uint64_t seed) const;
};

ToyWorkspace MakeToyWorkspace(const std::filesystem::path& dir,
                              const ToyCorpusOptions& options = {}, int fanout = 3,
                              int bundle_width = 32, uint64_t seed = 7);

}  // namespace testing_util
}  // namespace ctts

#endif  // CTTS_TESTS_SUPPORT_TOY_WORKSPACE_H_
