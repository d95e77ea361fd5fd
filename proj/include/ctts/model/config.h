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

#ifndef CTTS_MODEL_CONFIG_H_
#define CTTS_MODEL_CONFIG_H_

#include "json.hpp"

namespace ctts {

// Architecture hyperparameters. Defaults are the full-size encoder/decoder
// (6 + 6 layers, width 768, 512 positions).
struct ModelConfig {
  int d_model = 768;
  int n_enc_layers = 6;
  int n_dec_layers = 6;
  int n_heads = 12;
  int ffn_dim = 3072;
  int n_mels = 80;
  int prenet_dim = 256;
  int postnet_channels = 512;
  int postnet_kernel = 5;
  int postnet_layers = 5;
  double dropout = 0.1;         // residual dropout, training only
  double prenet_dropout = 0.5;  // always on, including inference
  int max_positions = 512;      // encoder sequence limit |C| + |P|
  int max_decode_steps = 2000;
  int text_vocab_size = 0;
  int phone_vocab_size = 0;
  double layer_norm_eps = 1e-5;

  // Throws ConfigError on inconsistent settings.
  void Validate() const;
  bool operator==(const ModelConfig&) const = default;
};

void to_json(nlohmann::json& j, const ModelConfig& c);
// Missing keys keep their defaults; unknown keys raise ConfigError.
void from_json(const nlohmann::json& j, ModelConfig& c);

}  // namespace ctts

#endif  // CTTS_MODEL_CONFIG_H_
