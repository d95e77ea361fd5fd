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

#ifndef CTTS_SYNTH_SYNTHESIZER_H_
#define CTTS_SYNTH_SYNTHESIZER_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "ctts/audio/mel.h"
#include "ctts/audio/wav.h"
#include "ctts/train/checkpoint.h"
#include "json.hpp"

namespace ctts {

inline constexpr double kDefaultStopThreshold = 0.5;
inline constexpr int kDefaultMaxFrames = 1000;

struct SynthesisRequest {
  std::string context;  // may be empty
  std::string content;
  std::filesystem::path checkpoint;
  double stop_threshold = kDefaultStopThreshold;
  int max_frames = kDefaultMaxFrames;
  // Labels for checkpoints trained in labels mode.
  std::string emotion;
  std::string speaker;
  // Prenet dropout seed; derived from the request text when unset.
  std::optional<uint64_t> seed;

  // Throws ValidationError: empty content, threshold outside (0, 1),
  // max_frames < 1.
  void Validate() const;
  uint64_t EffectiveSeed() const;
  nlohmann::ordered_json ToJson() const;
};

enum class StopReason { kStopToken, kMaxFrames };
const char* StopReasonName(StopReason reason);

struct MelResult {
  MelSpectrogram mel;  // denormalized, post-postnet
  StopReason stop_reason = StopReason::kMaxFrames;
  uint64_t seed = 0;
};

// A loaded checkpoint plus its vocab and lexicon, reusable across requests.
class Synthesizer {
 public:
  Synthesizer(Checkpoint checkpoint, TrainingAssets assets);
  // Loads the checkpoint and the assets it records, verifying digests.
  static Synthesizer Load(const std::filesystem::path& checkpoint);

  // Decodes until stop_prob >= stop_threshold or max_frames frames exist.
  // The request's checkpoint path is ignored.
  MelResult SynthesizeMel(const SynthesisRequest& request) const;

  const Checkpoint& checkpoint() const { return checkpoint_; }
  const TrainingAssets& assets() const { return assets_; }

 private:
  Checkpoint checkpoint_;
  TrainingAssets assets_;
};

MelResult SynthesizeMel(const SynthesisRequest& request);

struct VocoderBackend {
  enum class Kind { kGriffinLim, kExternal };
  Kind kind = Kind::kGriffinLim;
  // External: shell command with {mel_in} and {wav_out} placeholders.
  std::string command;
  int griffin_lim_iters = 60;

  static VocoderBackend GriffinLim(int iters = 60);
  static VocoderBackend External(std::string command);
  // Throws ConfigError when an external template lacks a placeholder.
  void Validate() const;
  std::string Describe() const;
};

// griffin_lim: in-process inversion. external: writes the mel file, runs the
// command in a private temp directory and reads back the WAV; a nonzero exit
// or missing output raises BackendError.
Waveform Vocode(const MelSpectrogram& mel, const VocoderBackend& backend);

struct SynthesisOutput {
  Waveform wave;
  MelResult mel;
  std::filesystem::path wav_path;
  std::filesystem::path mel_path;
  std::filesystem::path sidecar_path;
};

// synthesize_mel + vocode. Writes wav_out, the mel next to it (.mel) and a
// one-object JSON sidecar (.json). Nothing is written if vocoding fails.
SynthesisOutput Synthesize(const Synthesizer& synth, const SynthesisRequest& request,
                           const VocoderBackend& backend,
                           const std::filesystem::path& wav_out);
SynthesisOutput Synthesize(const SynthesisRequest& request, const VocoderBackend& backend,
                           const std::filesystem::path& wav_out);

}  // namespace ctts

#endif  // CTTS_SYNTH_SYNTHESIZER_H_
