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

#include "ctts/cli/cli.h"

#include <map>
#include <set>

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "ctts/audio/mel_io.h"
#include "ctts/cli/tool_config.h"
#include "ctts/common/error.h"
#include "ctts/common/file_util.h"
#include "ctts/common/string_util.h"
#include "ctts/dataset/builder.h"
#include "ctts/dataset/manifest.h"
#include "ctts/eval/harness.h"
#include "ctts/synth/synthesizer.h"
#include "ctts/train/checkpoint.h"
#include "ctts/train/pipeline.h"
#include "ctts/train/toy_voice.h"

namespace ctts {

namespace fs = std::filesystem;

namespace {

constexpr int kToyModelWidth = 64;

struct Options {
  std::string config;
  std::string out;
  int64_t seed = -1;
  bool quiet = false;

  // build-data
  std::string speech;
  std::string texts;

  // train
  std::string variant;
  int max_steps = -1;
  int epochs = -1;

  // synth
  std::string ckpt;
  std::string context;
  std::string content;
  std::string vocoder;
  std::string vocoder_cmd;
  std::string emotion;
  std::string speaker;
  int max_frames = -1;
  double stop_threshold = -1.0;

  // eval
  std::string manifest;
  std::string variants;
  std::string asr;
  std::string work_dir;
  bool no_ref = false;

  // inspect
  std::string inspect_kind;
  std::string inspect_path;

  // toy-corpus
  int bundle_width = -1;
};

ToolConfig ConfigOrDefaults(const Options& o) {
  return o.config.empty() ? ToolConfig::Defaults(fs::current_path()) : ToolConfig::Load(o.config);
}

void ApplySeed(const Options& o, ToolConfig* c) {
  if (o.seed >= 0) c->seed = static_cast<uint64_t>(o.seed);
}

VocoderBackend PickVocoder(const Options& o, const ToolConfig& c) {
  VocoderBackend b = c.vocoder;
  if (o.vocoder == "griffin_lim") {
    b.kind = VocoderBackend::Kind::kGriffinLim;
  } else if (o.vocoder == "external") {
    b.kind = VocoderBackend::Kind::kExternal;
  } else if (!o.vocoder.empty()) {
    throw ValidationError("--vocoder must be griffin_lim or external");
  }
  if (!o.vocoder_cmd.empty()) b.command = o.vocoder_cmd;
  b.Validate();
  return b;
}

int CmdBuildData(const Options& o, std::ostream& out) {
  ToolConfig c = ConfigOrDefaults(o);
  ApplySeed(o, &c);
  if (!o.speech.empty()) c.dataset.speech_manifest = o.speech;
  if (!o.texts.empty()) c.dataset.text_corpus = o.texts;
  if (c.dataset.speech_manifest.empty() || c.dataset.text_corpus.empty()) {
    throw ConfigError("build-data needs a speech manifest and a text corpus");
  }
  const DatasetSummary s = BuildDataset(c.dataset, o.out, c.seed);
  out << "rows " << (s.train + s.valid + s.test) << "\n"
      << "speech_samples " << s.speech_samples << "\n"
      << "context_texts " << s.context_texts << "\n"
      << "train " << s.train << "\nvalid " << s.valid << "\ntest " << s.test << "\n"
      << "manifest " << (fs::path(o.out) / "ctts.jsonl").string() << "\n";
  return kExitOk;
}

int CmdTrain(const Options& o, std::ostream& out) {
  ToolConfig c = ToolConfig::Load(o.config);
  ApplySeed(o, &c);
  for (StageSpec* s : {&c.pretrain, &c.finetune}) {
    if (o.max_steps >= 0) s->hparams.max_steps = o.max_steps;
    if (o.epochs >= 0) s->hparams.epochs = o.epochs;
  }
  const VariantSpec variant = VariantSpec::ForName(o.variant);
  PipelineReport report;
  const Checkpoint ckpt = RunPipeline(variant, c.ToPipeline(o.out), &report);
  out << "variant " << variant.name << "\n"
      << "stage " << ckpt.stage << "\n"
      << "step " << ckpt.step << "\n";
  if (report.import_hit_rate >= 0.0) out << "import_hit_rate " << report.import_hit_rate << "\n";
  out << "checkpoint " << (fs::path(o.out) / variant.name / (ckpt.stage + ".ckpt")).string()
      << "\n";
  return kExitOk;
}

int CmdSynth(const Options& o, std::ostream& out) {
  const ToolConfig c = ConfigOrDefaults(o);
  SynthesisRequest req;
  req.checkpoint = o.ckpt;
  req.context = o.context;
  req.content = o.content;
  req.emotion = o.emotion;
  req.speaker = o.speaker;
  req.stop_threshold = o.stop_threshold > 0.0 ? o.stop_threshold : c.stop_threshold;
  req.max_frames = o.max_frames > 0 ? o.max_frames : c.max_frames;
  if (o.seed >= 0) req.seed = static_cast<uint64_t>(o.seed);
  const SynthesisOutput result = Synthesize(req, PickVocoder(o, c), o.out);
  out << "wav " << result.wav_path.string() << "\n"
      << "frames " << result.mel.mel.n_frames() << "\n"
      << "stop_reason " << StopReasonName(result.mel.stop_reason) << "\n"
      << "sidecar " << result.sidecar_path.string() << "\n";
  return kExitOk;
}

std::vector<std::pair<std::string, fs::path>> ParseVariants(const std::string& spec) {
  std::vector<std::pair<std::string, fs::path>> out;
  std::string rest = spec;
  ReplaceAll(&rest, ",", " ");
  for (const auto& part : SplitWhitespace(rest)) {
    const size_t eq = part.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == part.size()) {
      throw ValidationError("--variants expects NAME=CHECKPOINT[,NAME=CHECKPOINT...], got '" +
                            part + "'");
    }
    out.emplace_back(part.substr(0, eq), part.substr(eq + 1));
  }
  return out;
}

int CmdEval(const Options& o, std::ostream& out) {
  const ToolConfig c = ConfigOrDefaults(o);
  const std::string asr = o.asr.empty() ? c.asr_command : o.asr;
  if (asr.empty()) throw ValidationError("eval needs --asr or asr.command in the config");
  EvalOptions options;
  options.include_reference = !o.no_ref;
  options.stop_threshold = c.stop_threshold;
  options.max_frames = o.max_frames > 0 ? o.max_frames : c.max_frames;
  options.work_dir = o.work_dir.empty() ? fs::path(o.out).parent_path() / "eval_audio"
                                        : fs::path(o.work_dir);
  if (options.work_dir.empty()) options.work_dir = "eval_audio";
  const EvalReport report = EvaluateCorpus(o.manifest, ParseVariants(o.variants),
                                           PickVocoder(o, c), AsrClient::External(asr), options);
  WriteFileAtomic(o.out, report.ToJson().dump(2) + "\n");
  WriteFileAtomic(fs::path(o.out).replace_extension(".txt"), report.RenderTable());
  out << report.RenderTable();
  for (const auto& v : report.variants) {
    if (v.failures > 0) out << v.name << ": " << v.failures << " failed samples\n";
  }
  return kExitOk;
}

int CmdInspect(const Options& o, std::ostream& out) {
  if (o.inspect_kind == "mel") {
    const MelSpectrogram mel = ReadMel(o.inspect_path);
    out << "n_mels " << mel.n_mels() << "\n"
        << "n_frames " << mel.n_frames() << "\n"
        << "hop " << mel.config.hop_length << "\n"
        << "sample_rate " << mel.config.sample_rate << "\n";
  } else if (o.inspect_kind == "manifest") {
    const auto rows = ReadManifest(o.inspect_path, /*allow_speech_rows=*/true);
    std::map<std::string, int> splits;
    std::set<std::string> speakers;
    std::set<std::string> emotions;
    for (const auto& r : rows) {
      ++splits[SplitName(r.split)];
      speakers.insert(r.speaker);
      emotions.insert(r.emotion);
    }
    out << "rows " << rows.size() << "\n";
    for (const auto& [name, n] : splits) out << "split " << name << " " << n << "\n";
    out << "speakers " << Join(std::vector<std::string>(speakers.begin(), speakers.end()), ",")
        << "\n";
    out << "emotions " << Join(std::vector<std::string>(emotions.begin(), emotions.end()), ",")
        << "\n";
  } else if (o.inspect_kind == "ckpt") {
    const Checkpoint ck = LoadCheckpoint(o.inspect_path);
    out << "format_version " << kCheckpointVersion << "\n"
        << "stage " << (ck.stage.empty() ? "(init)" : ck.stage) << "\n"
        << "step " << ck.step << "\n"
        << "variant " << ck.variant << "\n"
        << "context_mode " << ContextModeName(ck.context_mode) << "\n"
        << "tensors " << ck.params.tensors.size() << "\n"
        << "parameters " << ck.params.tensors.NumElements() << "\n"
        << "vocab " << ck.vocab_path << " sha256:" << ck.vocab_digest << "\n"
        << "lexicon " << ck.lexicon_path << " sha256:" << ck.lexicon_digest << "\n"
        << "model " << nlohmann::json(ck.model_config).dump() << "\n"
        << "mel " << nlohmann::json(ck.mel_config).dump() << "\n"
        << "metadata " << ck.metadata.dump() << "\n";
  } else {
    throw ValidationError("inspect: kind must be mel, manifest or ckpt");
  }
  return kExitOk;
}

// Desk-scale settings for the generated toy config.
nlohmann::ordered_json ToyConfigJson(int d_model, uint64_t seed) {
  nlohmann::ordered_json hp = {{"learning_rate", 1e-3}, {"batch_size", 4},  {"epochs", 50},
                               {"warmup_steps", 50},    {"max_steps", 200}};
  return {
      {"dataset", {{"speech_manifest", "speech.jsonl"}, {"text_corpus", "texts.jsonl"},
                   {"fanout", 3}}},
      {"model", {{"d_model", d_model}, {"n_enc_layers", 2}, {"n_dec_layers", 2},
                 {"n_heads", 4}, {"ffn_dim", 2 * d_model}, {"prenet_dim", d_model},
                 {"postnet_channels", d_model}, {"max_decode_steps", 400}}},
      {"stages", {{kStageTtsPretrain, {{"manifest", "speech.jsonl"}, {"hparams", hp}}},
                  {kStageCttsFinetune, {{"manifest", "data/ctts.jsonl"}, {"hparams", hp}}}}},
      {"variant", {{"embedding_bundle", "bundle"}}},
      {"synthesis", {{"max_frames", 300}}},
      {"seed", seed},
  };
}

int CmdToyCorpus(const Options& o, std::ostream& out) {
  ToolConfig c = ConfigOrDefaults(o);
  ApplySeed(o, &c);
  const Lexicon lexicon = Lexicon::Load(c.lexicon);
  ToyCorpusOptions toy;
  toy.sample_rate = c.mel.sample_rate;
  const ToyCorpusFiles files = WriteToyCorpus(toy, lexicon, o.out);

  // A bundle covering every token the toy contexts and labels can produce.
  std::set<std::string> tokens = {TextVocab::kPad, TextVocab::kUnk};
  for (const auto& e : toy.emotions) tokens.insert(EmotionMarker(e));
  for (const auto& s : toy.speakers) tokens.insert(SpeakerMarker(s));
  std::set<std::string> text_emotions;
  for (const auto& [speech, text] : c.dataset.emotion_map) text_emotions.insert(text);
  for (const auto& t : IngestTextCorpus(files.text_corpus, text_emotions)) {
    for (const auto& s : toy.speakers) {
      for (const auto& tok :
           SplitContext(RenderContext(c.dataset.context_template, t.text, s))) {
        tokens.insert(tok);
      }
    }
  }
  const int width = o.bundle_width > 0   ? o.bundle_width
                    : o.config.empty()   ? kToyModelWidth
                                         : c.model.d_model;
  const fs::path bundle_dir = fs::path(o.out) / "bundle";
  SaveEmbeddingBundle(
      RandomEmbeddingBundle(std::vector<std::string>(tokens.begin(), tokens.end()), width,
                            c.seed),
      bundle_dir);
  const fs::path config_path = fs::path(o.out) / "toy.json";
  if (o.config.empty()) {
    WriteFileAtomic(config_path, ToyConfigJson(width, c.seed).dump(2) + "\n");
    out << "config " << config_path.string() << "\n";
  }
  out << "speech_manifest " << files.speech_manifest.string() << "\n"
      << "text_corpus " << files.text_corpus.string() << "\n"
      << "embedding_bundle " << bundle_dir.string() << "\n";
  return kExitOk;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"ctts: contextual text-to-speech toolkit", "ctts"};
  app.require_subcommand(1);
  Options o;
  app.add_flag("-q,--quiet", o.quiet, "Only log warnings and errors");

  auto* build = app.add_subcommand("build-data", "Join speech and text corpora into a dataset");
  build->add_option("--speech", o.speech, "Speech manifest (overrides config)");
  build->add_option("--texts", o.texts, "Text corpus (overrides config)");
  build->add_option("--config", o.config, "Config file");
  build->add_option("--out", o.out, "Output directory")->required();
  build->add_option("--seed", o.seed, "Seed (overrides config)");

  auto* train = app.add_subcommand("train", "Run the training stages of one variant");
  train->add_option("--variant", o.variant, "M-CTTS, M-TTS, M-LTTS or M-CTTS-NT")->required();
  train->add_option("--config", o.config, "Config file")->required();
  train->add_option("--out", o.out, "Output directory")->required();
  train->add_option("--seed", o.seed, "Seed (overrides config)");
  train->add_option("--max-steps", o.max_steps, "Cap on updates per stage");
  train->add_option("--epochs", o.epochs, "Epochs per stage");

  auto* synth = app.add_subcommand("synth", "Synthesize speech from context and content");
  synth->add_option("--ckpt", o.ckpt, "Checkpoint")->required();
  synth->add_option("--context", o.context, "Controlling context (may be empty)");
  synth->add_option("--content", o.content, "Text to speak")->required();
  synth->add_option("--vocoder", o.vocoder, "griffin_lim or external");
  synth->add_option("--vocoder-cmd", o.vocoder_cmd, "External command with {mel_in} {wav_out}");
  synth->add_option("--out", o.out, "Output WAV")->required();
  synth->add_option("--config", o.config, "Config file");
  synth->add_option("--emotion", o.emotion, "Emotion label (label-conditioned models)");
  synth->add_option("--speaker", o.speaker, "Speaker label (label-conditioned models)");
  synth->add_option("--seed", o.seed, "Prenet dropout seed");
  synth->add_option("--max-frames", o.max_frames, "Frame cap");
  synth->add_option("--stop-threshold", o.stop_threshold, "Stop probability threshold");

  auto* eval = app.add_subcommand("eval", "WER evaluation over the test split");
  eval->add_option("--manifest", o.manifest, "CTTS manifest")->required();
  eval->add_option("--variants", o.variants, "NAME=CKPT[,NAME=CKPT...]")->required();
  eval->add_option("--asr", o.asr, "ASR command with {wav}");
  eval->add_option("--out", o.out, "Report JSON")->required();
  eval->add_option("--config", o.config, "Config file");
  eval->add_option("--vocoder", o.vocoder, "griffin_lim or external");
  eval->add_option("--vocoder-cmd", o.vocoder_cmd, "External command with {mel_in} {wav_out}");
  eval->add_option("--work-dir", o.work_dir, "Directory for synthesized audio");
  eval->add_option("--max-frames", o.max_frames, "Frame cap");
  eval->add_flag("--no-ref", o.no_ref, "Skip the ground-truth (Ref*) column");

  auto* inspect = app.add_subcommand("inspect", "Print mel, manifest or checkpoint metadata");
  inspect->add_option("kind", o.inspect_kind, "mel, manifest or ckpt")->required();
  inspect->add_option("path", o.inspect_path, "File")->required();

  auto* toy = app.add_subcommand("toy-corpus", "Write a synthetic toy-voice corpus");
  toy->add_option("--out", o.out, "Output directory")->required();
  toy->add_option("--config", o.config, "Config file");
  toy->add_option("--bundle-width", o.bundle_width, "Embedding bundle width");
  toy->add_option("--seed", o.seed, "Seed for the embedding bundle");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUserError;
  }

  auto logger = spdlog::get("ctts");
  if (!logger) logger = spdlog::stderr_color_mt("ctts");
  spdlog::set_default_logger(logger);
  spdlog::set_level(o.quiet ? spdlog::level::warn : spdlog::level::info);

  try {
    if (*build) return CmdBuildData(o, out);
    if (*train) return CmdTrain(o, out);
    if (*synth) return CmdSynth(o, out);
    if (*eval) return CmdEval(o, out);
    if (*inspect) return CmdInspect(o, out);
    if (*toy) return CmdToyCorpus(o, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.UserError() ? kExitUserError : kExitRuntimeError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntimeError;
  }
  err << app.help();
  return kExitUserError;
}

}  // namespace ctts
