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

#ifndef CTTS_TESTS_UNIT_TINY_MODEL_H_
#define CTTS_TESTS_UNIT_TINY_MODEL_H_

#include "ctts/model/config.h"

namespace ctts {
namespace testing_util {

inline ModelConfig TinyConfig() {
  ModelConfig c;
  c.d_model = 16;
  c.n_enc_layers = 2;
  c.n_dec_layers = 2;
  c.n_heads = 2;
  c.ffn_dim = 32;
  c.n_mels = 8;
  c.prenet_dim = 16;
  c.postnet_channels = 12;
  c.postnet_kernel = 5;
  c.postnet_layers = 3;
  c.max_positions = 64;
  c.max_decode_steps = 40;
  c.text_vocab_size = 20;
  c.phone_vocab_size = 30;
  return c;
}

}  // namespace testing_util
}  // namespace ctts

#endif  // CTTS_TESTS_UNIT_TINY_MODEL_H_
