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

#ifndef CTTS_TRAIN_EMBEDDING_H_
#define CTTS_TRAIN_EMBEDDING_H_

#include <filesystem>
#include <string>
#include <vector>

#include "ctts/text/vocab.h"
#include "ctts/train/checkpoint.h"

namespace ctts {

// Pretrained token embeddings. On disk a bundle is a directory holding
// vocab.txt (one surface token per line), embeddings.f32 (row-major float32,
// one row per vocab line) and header.json ({"width": W, "rows": N}).
struct EmbeddingBundle {
  std::vector<std::string> tokens;
  int width = 0;
  std::vector<float> values;  // tokens.size() x width

  int rows() const { return static_cast<int>(tokens.size()); }
  const float* Row(int i) const { return values.data() + static_cast<size_t>(i) * width; }
};

// Throws FormatError when the header, vocab and matrix disagree.
EmbeddingBundle LoadEmbeddingBundle(const std::filesystem::path& dir);
void SaveEmbeddingBundle(const EmbeddingBundle& bundle, const std::filesystem::path& dir);

// Copies bundle rows into the text embedding for every model vocab token the
// bundle knows. Only text_embedding changes. The result is stage embed_init
// with the hit rate recorded under metadata["import"]. Width mismatch raises
// ConfigError.
Checkpoint ImportTextEmbeddings(const Checkpoint& ckpt, const TextVocab& vocab,
                                const EmbeddingBundle& bundle);

}  // namespace ctts

#endif  // CTTS_TRAIN_EMBEDDING_H_
