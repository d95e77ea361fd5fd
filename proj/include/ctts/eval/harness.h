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

#ifndef CTTS_EVAL_HARNESS_H_
#define CTTS_EVAL_HARNESS_H_

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ctts/eval/wer.h"
#include "ctts/synth/synthesizer.h"
#include "json.hpp"

namespace ctts {

struct AsrClient {
  enum class Kind { kExternalCommand, kEchoStub };
  Kind kind = Kind::kEchoStub;
  std::string command;  // external: contains {wav}
  std::function<std::string(const std::filesystem::path&)> stub;

  static AsrClient External(std::string command);
  // Always returns `transcript`.
  static AsrClient Echo(std::string transcript);
  // Returns stub(wav); lets tests answer per file.
  static AsrClient EchoFn(std::function<std::string(const std::filesystem::path&)> fn);
  void Validate() const;
};

// external: runs the command and returns its trimmed standard output. A
// missing file or nonzero exit raises TranscriptionError.
std::string Transcribe(const std::filesystem::path& wav, const AsrClient& client);

inline constexpr const char* kRefColumn = "Ref*";

struct EvalRow {
  std::string id;
  std::string reference;
  std::string hypothesis;
  int substitutions = 0;
  int insertions = 0;
  int deletions = 0;
  int reference_words = 0;
  std::string error;  // non-empty: sample failed and is excluded from pooling
};

struct VariantResult {
  std::string name;
  std::vector<EvalRow> rows;
  int errors = 0;           // summed edit operations
  int reference_words = 0;  // summed over successful rows
  int failures = 0;
  double wer() const { return reference_words > 0 ? double(errors) / reference_words : 0.0; }
};

struct EvalReport {
  std::vector<VariantResult> variants;
  nlohmann::json metadata = nlohmann::json::object();

  const VariantResult* Find(const std::string& name) const;
  nlohmann::json ToJson() const;
  // Five aligned columns Ref*, M-CTTS, M-LTTS, M-CTTS-NT, M-TTS with the
  // measured WER and the published values on a line marked
  // "paper, not reproduced".
  std::string RenderTable() const;
};

// Published corpus WER per column, in table order.
const std::vector<std::pair<std::string, double>>& PublishedWerReference();

struct EvalOptions {
  std::filesystem::path work_dir;  // synthesized audio goes here
  bool include_reference = true;   // Ref*: transcribe the original audio
  double stop_threshold = kDefaultStopThreshold;
  int max_frames = kDefaultMaxFrames;
};

// Synthesizes and transcribes every test-split sample for every variant and
// pools WER at corpus level. Per-sample failures are recorded on the row,
// counted and logged, never dropped. An empty test split raises
// ValidationError.
EvalReport EvaluateCorpus(const std::filesystem::path& manifest,
                          const std::vector<std::pair<std::string, std::filesystem::path>>& variants,
                          const VocoderBackend& backend, const AsrClient& client,
                          const EvalOptions& options);

}  // namespace ctts

#endif  // CTTS_EVAL_HARNESS_H_
