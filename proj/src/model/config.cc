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

#include "ctts/model/config.h"

#include <set>
#include <string>

#include "ctts/common/error.h"

namespace ctts {

void ModelConfig::Validate() const {
  auto positive = [](int v, const char* name) {
    if (v <= 0) throw ConfigError(std::string("model.") + name + " must be positive");
  };
  positive(d_model, "d_model");
  positive(n_enc_layers, "n_enc_layers");
  positive(n_dec_layers, "n_dec_layers");
  positive(n_heads, "n_heads");
  positive(ffn_dim, "ffn_dim");
  positive(n_mels, "n_mels");
  positive(prenet_dim, "prenet_dim");
  positive(postnet_channels, "postnet_channels");
  positive(postnet_layers, "postnet_layers");
  positive(max_positions, "max_positions");
  positive(max_decode_steps, "max_decode_steps");
  positive(text_vocab_size, "text_vocab_size");
  positive(phone_vocab_size, "phone_vocab_size");
  if (d_model % n_heads != 0) throw ConfigError("model.d_model must be divisible by n_heads");
  if (postnet_kernel < 1 || postnet_kernel % 2 == 0) {
    throw ConfigError("model.postnet_kernel must be odd");
  }
  if (!(dropout >= 0.0 && dropout < 1.0) || !(prenet_dropout >= 0.0 && prenet_dropout < 1.0)) {
    throw ConfigError("model dropout rates must be in [0, 1)");
  }
  if (!(layer_norm_eps > 0.0)) throw ConfigError("model.layer_norm_eps must be > 0");
}

#define CTTS_MODEL_FIELDS(X)                                                  \
  X(d_model) X(n_enc_layers) X(n_dec_layers) X(n_heads) X(ffn_dim) X(n_mels)  \
  X(prenet_dim) X(postnet_channels) X(postnet_kernel) X(postnet_layers)       \
  X(dropout) X(prenet_dropout) X(max_positions) X(max_decode_steps)           \
  X(text_vocab_size) X(phone_vocab_size) X(layer_norm_eps)

void to_json(nlohmann::json& j, const ModelConfig& c) {
  j = nlohmann::json::object();
#define X(f) j[#f] = c.f;
  CTTS_MODEL_FIELDS(X)
#undef X
}

void from_json(const nlohmann::json& j, ModelConfig& c) {
  static const std::set<std::string> kKeys = {
#define X(f) #f,
      CTTS_MODEL_FIELDS(X)
#undef X
  };
  if (!j.is_object()) throw ConfigError("model section must be an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (kKeys.count(it.key()) == 0) throw ConfigError("unknown key model." + it.key());
  }
  try {
#define X(f) \
  if (j.contains(#f)) j.at(#f).get_to(c.f);
    CTTS_MODEL_FIELDS(X)
#undef X
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("model section: ") + e.what());
  }
}

#undef CTTS_MODEL_FIELDS

}  // namespace ctts
