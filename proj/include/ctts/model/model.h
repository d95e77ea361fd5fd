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

#ifndef CTTS_MODEL_MODEL_H_
#define CTTS_MODEL_MODEL_H_

#include <cstdint>
#include <vector>

#include "ctts/model/config.h"
#include "ctts/nn/graph.h"
#include "ctts/nn/tensor.h"
#include "ctts/text/phonemizer.h"
#include "ctts/text/vocab.h"

namespace ctts {

// Per-bin mel normalization statistics.
struct MelStats {
  std::vector<double> mean;
  std::vector<double> stddev;

  bool empty() const { return mean.empty(); }
  nn::Matrix Normalize(const nn::Matrix& frames) const;
  nn::Matrix Denormalize(const nn::Matrix& frames) const;
  bool operator==(const MelStats&) const = default;
};

// Learnable tensors plus the normalization statistics they were trained
// against. Tensor names:
//   text_embedding, phone_embedding, segment_embedding,
//   enc.{i}.*, enc.ln.*, dec.prenet.*, dec.in.*, dec.{i}.*, dec.ln.*,
//   dec.mel.*, dec.stop.*, postnet.{j}.*
struct ModelParams {
  nn::ParameterSet tensors;
  MelStats stats;

  const nn::Matrix& text_embedding() const { return tensors.Get("text_embedding"); }
  const nn::Matrix& phone_embedding() const { return tensors.Get("phone_embedding"); }
};

// Deterministic in `seed`. Embeddings ~ N(0, 1/d_model), weight matrices
// Xavier-normal, biases zero, layer-norm gains one.
ModelParams InitParams(const ModelConfig& config, uint64_t seed);

// Throws ConfigError if tensor shapes disagree with `config`.
void CheckParamShapes(const ModelParams& params, const ModelConfig& config);

struct ForwardOptions {
  bool training = false;   // enables residual dropout
  uint64_t dropout_seed = 0;  // keys every dropout mask, prenet included
};

// Encoder output H: (|C| + |P|) x d_model rows. Rows at or past
// `valid_rows` are padding and never attended to.
struct EncoderOutput {
  nn::Matrix states;
  int valid_rows = 0;
  int context_rows = 0;
};

// Builds H = Encoder([C, P]) inside `graph`. The sequence is padded with PAD
// phone ids up to `padded_length` (0 = no padding).
nn::Var BuildEncoder(nn::Graph* graph, const ModelParams& params,
                     const ModelConfig& config, const std::vector<int>& context_ids,
                     const std::vector<int>& phone_ids, int padded_length,
                     const ForwardOptions& options);

struct DecoderVars {
  nn::Var pre;   // T x n_mels, before the postnet
  nn::Var post;  // T x n_mels, after the residual postnet
  nn::Var stop;  // T x 1 stop logits
};

// Teacher-forced decoder over normalized `targets` (T x n_mels, possibly
// padded past `valid_frames`). Input at step t is the gold frame t - 1, with
// an all-zero go frame at t = 0.
DecoderVars BuildDecoder(nn::Graph* graph, const ModelParams& params,
                         const ModelConfig& config, nn::Var encoder, int encoder_valid,
                         const nn::Matrix& targets, int valid_frames,
                         const ForwardOptions& options);

// Inference-mode encoder.
EncoderOutput Encode(const TokenSequence& context, const PhonemeSequence& phonemes,
                     const ModelParams& params, const ModelConfig& config);

struct TeacherForcedOutput {
  nn::Matrix pre;
  nn::Matrix post;
  Eigen::VectorXd stop_logits;
};

TeacherForcedOutput DecodeTeacherForced(const EncoderOutput& encoder,
                                        const nn::Matrix& targets,
                                        const ModelParams& params,
                                        const ModelConfig& config,
                                        const ForwardOptions& options = {});

struct StepOutput {
  nn::RowVector frame;  // pre-postnet frame, fed back as the next input
  double stop_logit = 0.0;
  double stop_prob = 0.0;
};

// Autoregressive decoder with cached self-attention keys/values. Runs in
// inference mode; prenet dropout masks are keyed by (prenet_seed, step) the
// same way the teacher-forced decoder keys them by dropout_seed.
class IncrementalDecoder {
 public:
  IncrementalDecoder(const ModelParams& params, const ModelConfig& config,
                     const EncoderOutput& encoder, uint64_t prenet_seed);

  // Consumes the previous frame (the go frame when steps() == 0).
  StepOutput Step(const nn::RowVector& previous_frame);
  StepOutput StepFromGo();
  int steps() const { return steps_; }

 private:
  struct LayerCache {
    nn::Matrix self_k, self_v;  // grows one row per step
    nn::Matrix cross_k, cross_v;
  };

  const ModelParams& params_;
  const ModelConfig& config_;
  int encoder_valid_;
  uint64_t prenet_seed_;
  int steps_ = 0;
  std::vector<LayerCache> layers_;
};

// One step given the full history of previously emitted frames. Throws
// LimitError once the history reaches config.max_decode_steps.
StepOutput DecodeStep(const EncoderOutput& encoder,
                      const std::vector<nn::RowVector>& history,
                      const ModelParams& params, const ModelConfig& config,
                      uint64_t prenet_seed);

// Residual postnet over a whole pre-postnet sequence.
nn::Matrix ApplyPostnet(const ModelParams& params, const ModelConfig& config,
                        const nn::Matrix& pre);

// Dropout keep-mask scaled by 1/(1-p). Row r depends only on
// (seed, site, r), never on the number of rows.
nn::Matrix DropoutMask(uint64_t seed, uint64_t site, int rows, int cols, double p);

}  // namespace ctts

#endif  // CTTS_MODEL_MODEL_H_
