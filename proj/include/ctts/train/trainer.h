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

#ifndef CTTS_TRAIN_TRAINER_H_
#define CTTS_TRAIN_TRAINER_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "ctts/audio/mel.h"
#include "ctts/dataset/types.h"
#include "ctts/model/loss.h"
#include "ctts/model/model.h"
#include "ctts/train/checkpoint.h"
#include "ctts/train/spec.h"

namespace ctts {

// Model-ready training pair.
struct TrainingExample {
  std::string id;
  std::vector<int> context_ids;
  std::vector<int> phone_ids;
  nn::Matrix mel;  // frames x n_mels, normalized once stats are known
};

// Context token ids for one sample under `mode`. Blank never reads the
// sample's context or labels.
std::vector<int> ContextIds(const CttsSample& sample, ContextMode mode,
                            const TextVocab& vocab, int max_length);

// Tokenizes, phonemizes and extracts (unnormalized) mel targets. Audio
// failures raise TrainingError naming the sample id.
std::vector<TrainingExample> PrepareExamples(const std::vector<CttsSample>& samples,
                                             ContextMode mode, const TrainingAssets& assets,
                                             const MelConfig& mel_config, int max_positions);

// Per-bin mean and standard deviation over every frame (stddev floored).
MelStats ComputeMelStats(const std::vector<TrainingExample>& examples);

// Batch loss with padding to the batch maxima. Mel errors and stop BCE are
// pooled over the batch's valid cells and steps. When `grads` is non-null it
// receives d(total)/d(param) for every tensor.
LossBreakdown BatchLoss(const ModelParams& params, const ModelConfig& config,
                        const std::vector<const TrainingExample*>& batch, double stop_weight,
                        const ForwardOptions& options, std::vector<nn::Matrix>* grads);

// Indices of the examples in batch `step` under the seed-determined epoch
// order.
std::vector<int> BatchIndices(size_t n_examples, int batch_size, uint64_t seed, int64_t step);

struct StepLog {
  int64_t step = 0;  // one-based
  LossBreakdown loss;
  double learning_rate = 0.0;
  double grad_norm = 0.0;
};

struct TrainStats {
  int64_t steps_run = 0;
  int64_t context_tokens_consumed = 0;
  std::map<int, int64_t> context_lengths;  // length -> examples seen
  std::vector<StepLog> log;
};

struct TrainOptions {
  // Directory for periodic checkpoints ("{stage}-step{N}.ckpt"); empty: none.
  std::filesystem::path checkpoint_dir;
  std::function<void(const StepLog&)> on_step;
};

// Runs spec.hparams.epochs over the training split of spec.manifest (capped at
// max_steps). Resumes from `start` when it is a checkpoint of the same stage;
// otherwise starts the stage at step 0 with fresh optimizer moments. Batch
// order and dropout depend only on (seed, step).
Checkpoint TrainStage(const StageSpec& spec, const Checkpoint& start, uint64_t seed,
                      const TrainingAssets& assets, const TrainOptions& options = {},
                      TrainStats* stats = nullptr);

// Same, over already prepared (unnormalized) examples.
Checkpoint TrainOnExamples(const StageSpec& spec, const Checkpoint& start, uint64_t seed,
                           std::vector<TrainingExample> examples,
                           const TrainOptions& options = {}, TrainStats* stats = nullptr);

}  // namespace ctts

#endif  // CTTS_TRAIN_TRAINER_H_
