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

#include "ctts/cli/tool_config.h"

#include "ctts/common/error.h"
#include "ctts/common/file_util.h"
#include "ctts/common/json_util.h"

namespace ctts {

namespace fs = std::filesystem;

namespace {

fs::path ReadPath(const nlohmann::json& j, const char* key, const std::string& section,
                  const fs::path& base, const fs::path& fallback) {
  if (!j.contains(key)) return fallback;
  std::string p;
  ReadOptional(j, key, section, &p);
  return p.empty() ? fs::path() : ResolvePath(base, p);
}

void ReadDataset(const nlohmann::json& j, const fs::path& base, DatasetConfig* d) {
  const std::string s = "dataset";
  RejectUnknownKeys(j, {"speech_manifest", "text_corpus", "emotion_map", "speech_emotions",
                        "text_emotions", "template", "fanout", "ratios"},
                    s);
  d->speech_manifest = ReadPath(j, "speech_manifest", s, base, d->speech_manifest);
  d->text_corpus = ReadPath(j, "text_corpus", s, base, d->text_corpus);
  ReadOptional(j, "emotion_map", s, &d->emotion_map);
  ReadOptional(j, "speech_emotions", s, &d->speech_emotions);
  ReadOptional(j, "text_emotions", s, &d->text_emotions);
  ReadOptional(j, "template", s, &d->context_template);
  ReadOptional(j, "fanout", s, &d->fanout);
  if (j.contains("ratios")) {
    const auto& r = j.at("ratios");
    RejectUnknownKeys(r, {"train", "valid", "test"}, "dataset.ratios");
    ReadOptional(r, "train", "dataset.ratios", &d->ratios.train);
    ReadOptional(r, "valid", "dataset.ratios", &d->ratios.valid);
    ReadOptional(r, "test", "dataset.ratios", &d->ratios.test);
  }
}

void ReadStage(const nlohmann::json& j, const std::string& section, const fs::path& base,
               StageSpec* stage) {
  RejectUnknownKeys(j, {"manifest", "trainable", "hparams"}, section);
  stage->manifest = ReadPath(j, "manifest", section, base, stage->manifest);
  ReadOptional(j, "trainable", section, &stage->trainable);
  if (j.contains("hparams")) {
    try {
      from_json(j.at("hparams"), stage->hparams);
    } catch (const ConfigError& e) {
      throw ConfigError(section + ": " + e.what());
    }
  }
}

}  // namespace

fs::path DefaultLexiconPath() { return fs::path(CTTS_DATA_DIR) / "lexicon" / "cmudict.dict"; }

ToolConfig ToolConfig::Defaults(const fs::path& base_dir) {
  ToolConfig c;
  c.base_dir = base_dir;
  c.pretrain.name = kStageTtsPretrain;
  c.finetune.name = kStageCttsFinetune;
  c.finetune.context_mode = ContextMode::kContext;
  c.lexicon = DefaultLexiconPath();
  return c;
}

ToolConfig ToolConfig::FromJson(const nlohmann::json& j, const fs::path& base_dir) {
  ToolConfig c = Defaults(base_dir);
  RejectUnknownKeys(j, {"dataset", "mel", "model", "stages", "variant", "assets", "vocoder",
                        "asr", "synthesis", "seed"},
                    "config");
  if (j.contains("dataset")) ReadDataset(j.at("dataset"), base_dir, &c.dataset);
  if (j.contains("mel")) from_json(j.at("mel"), c.mel);
  if (j.contains("model")) from_json(j.at("model"), c.model);
  if (j.contains("stages")) {
    const auto& st = j.at("stages");
    RejectUnknownKeys(st, {kStageTtsPretrain, kStageCttsFinetune}, "stages");
    if (st.contains(kStageTtsPretrain)) {
      ReadStage(st.at(kStageTtsPretrain), "stages.tts_pretrain", base_dir, &c.pretrain);
    }
    if (st.contains(kStageCttsFinetune)) {
      ReadStage(st.at(kStageCttsFinetune), "stages.ctts_finetune", base_dir, &c.finetune);
    }
  }
  if (j.contains("variant")) {
    const auto& v = j.at("variant");
    RejectUnknownKeys(v, {"embedding_bundle", "freeze_imported_embeddings"}, "variant");
    c.embedding_bundle = ReadPath(v, "embedding_bundle", "variant", base_dir, {});
    ReadOptional(v, "freeze_imported_embeddings", "variant", &c.freeze_imported_embeddings);
  }
  if (j.contains("assets")) {
    const auto& a = j.at("assets");
    RejectUnknownKeys(a, {"lexicon", "vocab"}, "assets");
    c.lexicon = ReadPath(a, "lexicon", "assets", base_dir, c.lexicon);
    c.vocab = ReadPath(a, "vocab", "assets", base_dir, {});
  }
  if (j.contains("vocoder")) {
    const auto& v = j.at("vocoder");
    RejectUnknownKeys(v, {"kind", "command", "griffin_lim_iters"}, "vocoder");
    std::string kind = "griffin_lim";
    ReadOptional(v, "kind", "vocoder", &kind);
    if (kind == "external") {
      c.vocoder.kind = VocoderBackend::Kind::kExternal;
    } else if (kind != "griffin_lim") {
      throw ConfigError("vocoder.kind must be griffin_lim or external, got '" + kind + "'");
    }
    ReadOptional(v, "command", "vocoder", &c.vocoder.command);
    ReadOptional(v, "griffin_lim_iters", "vocoder", &c.vocoder.griffin_lim_iters);
    c.vocoder.Validate();
  }
  if (j.contains("asr")) {
    const auto& a = j.at("asr");
    RejectUnknownKeys(a, {"command"}, "asr");
    ReadOptional(a, "command", "asr", &c.asr_command);
  }
  if (j.contains("synthesis")) {
    const auto& s = j.at("synthesis");
    RejectUnknownKeys(s, {"stop_threshold", "max_frames"}, "synthesis");
    ReadOptional(s, "stop_threshold", "synthesis", &c.stop_threshold);
    ReadOptional(s, "max_frames", "synthesis", &c.max_frames);
  }
  ReadOptional(j, "seed", "config", &c.seed);
  c.mel.Validate();
  return c;
}

ToolConfig ToolConfig::Load(const fs::path& path) {
  nlohmann::json j;
  const std::string text = ReadFileToString(path);
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  return FromJson(j, fs::absolute(path).parent_path());
}

PipelineConfig ToolConfig::ToPipeline(const fs::path& out_dir) const {
  PipelineConfig p;
  p.model = model;
  p.mel = mel;
  p.pretrain = pretrain;
  p.finetune = finetune;
  p.embedding_bundle = embedding_bundle;
  p.freeze_imported_embeddings = freeze_imported_embeddings;
  p.lexicon = lexicon;
  p.vocab = vocab;
  p.out_dir = out_dir;
  p.seed = seed;
  return p;
}

}  // namespace ctts
