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

#include "ctts/synth/synthesizer.h"

#include <algorithm>
#include <vector>

#include <spdlog/spdlog.h>

#include "ctts/audio/griffin_lim.h"
#include "ctts/audio/mel_io.h"
#include "ctts/common/error.h"
#include "ctts/common/file_util.h"
#include "ctts/common/process.h"
#include "ctts/common/random.h"
#include "ctts/common/string_util.h"
#include "ctts/text/phonemizer.h"

namespace ctts {

void SynthesisRequest::Validate() const {
  if (Trim(content).empty()) throw ValidationError("synthesis request: content is empty");
  if (!(stop_threshold > 0.0 && stop_threshold < 1.0)) {
    throw ValidationError("synthesis request: stop_threshold must be in (0, 1)");
  }
  if (max_frames < 1) throw ValidationError("synthesis request: max_frames must be >= 1");
}

uint64_t SynthesisRequest::EffectiveSeed() const {
  if (seed.has_value()) return *seed;
  return CombineSeeds(Fnv1a64(context), Fnv1a64(content), Fnv1a64(emotion),
                      Fnv1a64(speaker));
}

nlohmann::ordered_json SynthesisRequest::ToJson() const {
  nlohmann::ordered_json j = {{"context", context},
                              {"content", content},
                              {"checkpoint", checkpoint.string()},
                              {"stop_threshold", stop_threshold},
                              {"max_frames", max_frames},
                              {"seed", EffectiveSeed()}};
  if (!emotion.empty()) j["emotion"] = emotion;
  if (!speaker.empty()) j["speaker"] = speaker;
  return j;
}

const char* StopReasonName(StopReason reason) {
  return reason == StopReason::kStopToken ? "stop_token" : "max_frames";
}

Synthesizer::Synthesizer(Checkpoint checkpoint, TrainingAssets assets)
    : checkpoint_(std::move(checkpoint)), assets_(std::move(assets)) {
  VerifyAssets(checkpoint_, assets_);
  CheckParamShapes(checkpoint_.params, checkpoint_.model_config);
}

Synthesizer Synthesizer::Load(const std::filesystem::path& checkpoint) {
  Checkpoint ckpt = LoadCheckpoint(checkpoint);
  TrainingAssets assets = LoadCheckpointAssets(ckpt);
  return Synthesizer(std::move(ckpt), std::move(assets));
}

MelResult Synthesizer::SynthesizeMel(const SynthesisRequest& request) const {
  request.Validate();
  const ModelConfig& config = checkpoint_.model_config;
  TokenSequence context;
  switch (checkpoint_.context_mode) {
    case ContextMode::kBlank: break;
    case ContextMode::kContext:
      context = TokenizeContext(request.context, assets_.vocab, config.max_positions);
      break;
    case ContextMode::kLabels:
      if (request.emotion.empty() || request.speaker.empty()) {
        throw ValidationError("checkpoint was trained with label conditioning; "
                              "request needs an emotion and a speaker");
      }
      context = EncodeLabels(request.emotion, request.speaker, assets_.vocab);
      break;
  }
  const PhonemeSequence phones =
      Phonemize(request.content, assets_.lexicon, config.max_positions);
  const EncoderOutput enc = Encode(context, phones, checkpoint_.params, config);

  MelResult result;
  result.seed = request.EffectiveSeed();
  IncrementalDecoder decoder(checkpoint_.params, config, enc, result.seed);
  const int limit = std::min(request.max_frames, config.max_decode_steps);
  std::vector<nn::RowVector> frames;
  nn::RowVector prev = nn::RowVector::Zero(config.n_mels);
  while (static_cast<int>(frames.size()) < limit) {
    const StepOutput out = decoder.Step(prev);
    frames.push_back(out.frame);
    prev = out.frame;
    if (out.stop_prob >= request.stop_threshold) {
      result.stop_reason = StopReason::kStopToken;
      break;
    }
  }
  nn::Matrix pre(frames.size(), config.n_mels);
  for (size_t t = 0; t < frames.size(); ++t) pre.row(t) = frames[t];
  const nn::Matrix post = checkpoint_.params.stats.Denormalize(
      ApplyPostnet(checkpoint_.params, config, pre));
  result.mel.config = checkpoint_.mel_config;
  result.mel.frames = post.cast<float>();
  return result;
}

MelResult SynthesizeMel(const SynthesisRequest& request) {
  request.Validate();
  return Synthesizer::Load(request.checkpoint).SynthesizeMel(request);
}

VocoderBackend VocoderBackend::GriffinLim(int iters) {
  VocoderBackend b;
  b.griffin_lim_iters = iters;
  return b;
}

VocoderBackend VocoderBackend::External(std::string command) {
  VocoderBackend b;
  b.kind = Kind::kExternal;
  b.command = std::move(command);
  return b;
}

void VocoderBackend::Validate() const {
  if (kind == Kind::kGriffinLim) {
    if (griffin_lim_iters < 1) throw ConfigError("vocoder: griffin_lim_iters must be >= 1");
    return;
  }
  if (command.find("{mel_in}") == std::string::npos ||
      command.find("{wav_out}") == std::string::npos) {
    throw ConfigError("vocoder: external command must contain {mel_in} and {wav_out}");
  }
}

std::string VocoderBackend::Describe() const {
  return kind == Kind::kGriffinLim ? "griffin_lim" : "external: " + command;
}

Waveform Vocode(const MelSpectrogram& mel, const VocoderBackend& backend) {
  backend.Validate();
  if (backend.kind == VocoderBackend::Kind::kGriffinLim) {
    return GriffinLim(mel, backend.griffin_lim_iters);
  }
  ScopedTempDir tmp("ctts-vocode");
  const auto mel_in = tmp.path() / "input.mel";
  const auto wav_out = tmp.path() / "output.wav";
  WriteMel(mel, mel_in);
  std::string cmd = backend.command;
  ReplaceAll(&cmd, "{mel_in}", ShellQuote(mel_in.string()));
  ReplaceAll(&cmd, "{wav_out}", ShellQuote(wav_out.string()));
  const CommandResult r = RunCommand(cmd);
  if (r.exit_code != 0) {
    throw BackendError("vocoder command exited with " + std::to_string(r.exit_code) + ": " +
                       cmd + (r.stderr_text.empty() ? "" : "\n" + Trim(r.stderr_text)));
  }
  if (!std::filesystem::exists(wav_out)) {
    throw BackendError("vocoder command produced no output file: " + cmd);
  }
  try {
    return LoadWav(wav_out, ReadWav(wav_out).sample_rate);
  } catch (const Error& e) {
    throw BackendError(std::string("vocoder output unreadable: ") + e.what());
  }
}

SynthesisOutput Synthesize(const Synthesizer& synth, const SynthesisRequest& request,
                           const VocoderBackend& backend,
                           const std::filesystem::path& wav_out) {
  backend.Validate();
  SynthesisOutput out;
  out.mel = synth.SynthesizeMel(request);
  out.wave = Vocode(out.mel.mel, backend);
  out.wav_path = wav_out;
  out.mel_path = std::filesystem::path(wav_out).replace_extension(".mel");
  out.sidecar_path = std::filesystem::path(wav_out).replace_extension(".json");
  if (wav_out.has_parent_path()) std::filesystem::create_directories(wav_out.parent_path());
  WriteWav(out.wav_path, out.wave);
  WriteMel(out.mel.mel, out.mel_path);
  nlohmann::ordered_json sidecar = {
      {"request", request.ToJson()},
      {"stop_reason", StopReasonName(out.mel.stop_reason)},
      {"frames", out.mel.mel.n_frames()},
      {"n_mels", out.mel.mel.n_mels()},
      {"sample_rate", out.wave.sample_rate},
      {"samples", out.wave.samples.size()},
      {"vocoder", backend.Describe()},
      {"context_mode", ContextModeName(synth.checkpoint().context_mode)},
      {"variant", synth.checkpoint().variant},
  };
  WriteFileAtomic(out.sidecar_path, sidecar.dump(2) + "\n");
  spdlog::info("synthesized {} frames ({}) -> {}", out.mel.mel.n_frames(),
               StopReasonName(out.mel.stop_reason), out.wav_path.string());
  return out;
}

SynthesisOutput Synthesize(const SynthesisRequest& request, const VocoderBackend& backend,
                           const std::filesystem::path& wav_out) {
  request.Validate();
  backend.Validate();
  return Synthesize(Synthesizer::Load(request.checkpoint), request, backend, wav_out);
}

}  // namespace ctts
