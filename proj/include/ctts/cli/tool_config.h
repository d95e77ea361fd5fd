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

#ifndef CTTS_CLI_TOOL_CONFIG_H_
#define CTTS_CLI_TOOL_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <string>

#include "ctts/audio/mel.h"
#include "ctts/dataset/builder.h"
#include "ctts/model/config.h"
#include "ctts/synth/synthesizer.h"
#include "ctts/train/pipeline.h"
#include "ctts/train/spec.h"
#include "json.hpp"

namespace ctts {

// The single declarative config shared by every subcommand. JSON with the
// sections dataset, mel, model, stages, variant, assets, vocoder, asr,
// synthesis and seed; see config/ctts.schema.json. Unknown keys are errors
// and relative paths resolve against the config file's directory.
struct ToolConfig {
  std::filesystem::path base_dir;
  DatasetConfig dataset;
  MelConfig mel;
  ModelConfig model;
  StageSpec pretrain;
  StageSpec finetune;
  std::filesystem::path embedding_bundle;
  bool freeze_imported_embeddings = false;
  std::filesystem::path lexicon;
  std::filesystem::path vocab;
  VocoderBackend vocoder;
  std::string asr_command;
  double stop_threshold = kDefaultStopThreshold;
  int max_frames = kDefaultMaxFrames;
  uint64_t seed = 0;

  // Config with every default and paths relative to `base_dir`.
  static ToolConfig Defaults(const std::filesystem::path& base_dir);
  static ToolConfig FromJson(const nlohmann::json& j, const std::filesystem::path& base_dir);
  // Throws ConfigError naming the offending key; ParseError for bad JSON.
  static ToolConfig Load(const std::filesystem::path& path);

  PipelineConfig ToPipeline(const std::filesystem::path& out_dir) const;
};

// Lexicon used when a config names none.
std::filesystem::path DefaultLexiconPath();

}  // namespace ctts

#endif  // CTTS_CLI_TOOL_CONFIG_H_
