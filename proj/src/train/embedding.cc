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

#include "ctts/train/embedding.h"

#include <cstring>
#include <unordered_map>

#include "ctts/common/error.h"
#include "ctts/common/file_util.h"
#include "json.hpp"

namespace ctts {

EmbeddingBundle LoadEmbeddingBundle(const std::filesystem::path& dir) {
  EmbeddingBundle b;
  nlohmann::json header;
  try {
    header = nlohmann::json::parse(ReadFileToString(dir / "header.json"));
    b.width = header.at("width").get<int>();
  } catch (const nlohmann::json::exception& e) {
    throw FormatError((dir / "header.json").string() + ": " + e.what());
  }
  const int rows = header.at("rows").get<int>();
  if (b.width < 0 || rows < 0) throw FormatError(dir.string() + ": negative bundle shape");

  const std::string vocab_text = ReadFileToString(dir / "vocab.txt");
  size_t start = 0;
  while (start < vocab_text.size()) {
    size_t end = vocab_text.find('\n', start);
    if (end == std::string::npos) end = vocab_text.size();
    std::string line = vocab_text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    b.tokens.push_back(line);
    start = end + 1;
  }
  if (b.rows() != rows) {
    throw FormatError(dir.string() + ": header says " + std::to_string(rows) +
                      " rows but vocab.txt has " + std::to_string(b.rows()) + " lines");
  }
  const std::string matrix = ReadFileToString(dir / "embeddings.f32");
  const size_t expected = static_cast<size_t>(rows) * b.width * sizeof(float);
  if (matrix.size() != expected) {
    throw FormatError(dir.string() + ": embeddings.f32 has " + std::to_string(matrix.size()) +
                      " bytes, expected " + std::to_string(expected));
  }
  b.values.resize(static_cast<size_t>(rows) * b.width);
  std::memcpy(b.values.data(), matrix.data(), expected);
  return b;
}

void SaveEmbeddingBundle(const EmbeddingBundle& bundle, const std::filesystem::path& dir) {
  if (bundle.values.size() != static_cast<size_t>(bundle.rows()) * bundle.width) {
    throw ValidationError("embedding bundle values do not match rows x width");
  }
  std::filesystem::create_directories(dir);
  std::string vocab;
  for (const auto& t : bundle.tokens) vocab += t + "\n";
  WriteFileAtomic(dir / "vocab.txt", vocab);
  WriteFileAtomic(dir / "embeddings.f32",
                  std::string_view(reinterpret_cast<const char*>(bundle.values.data()),
                                   bundle.values.size() * sizeof(float)));
  const nlohmann::json header = {{"width", bundle.width}, {"rows", bundle.rows()}};
  WriteFileAtomic(dir / "header.json", header.dump() + "\n");
}

Checkpoint ImportTextEmbeddings(const Checkpoint& ckpt, const TextVocab& vocab,
                                const EmbeddingBundle& bundle) {
  const int d = ckpt.model_config.d_model;
  if (bundle.width != d) {
    throw ConfigError("embedding bundle width " + std::to_string(bundle.width) +
                      " does not match d_model " + std::to_string(d));
  }
  if (vocab.Digest() != ckpt.vocab_digest) {
    throw LoadError("text vocabulary differs from the one recorded in the checkpoint");
  }
  std::unordered_map<std::string, int> rows;
  for (int i = 0; i < bundle.rows(); ++i) rows.emplace(bundle.tokens[i], i);

  Checkpoint out = ckpt;
  nn::Matrix& table = out.params.tensors.Get("text_embedding");
  int hits = 0;
  for (int id = 0; id < vocab.size(); ++id) {
    auto it = rows.find(vocab.Token(id));
    if (it == rows.end()) continue;
    const float* src = bundle.Row(it->second);
    for (int c = 0; c < d; ++c) table(id, c) = static_cast<double>(src[c]);
    ++hits;
  }
  const double hit_rate = vocab.size() > 0 ? static_cast<double>(hits) / vocab.size() : 0.0;
  out.stage = kStageEmbedInit;
  out.step = 0;
  out.optimizer = AdamState{};
  out.metadata["import"] = {{"hit_rate", hit_rate},
                            {"hits", hits},
                            {"vocab_size", vocab.size()},
                            {"bundle_rows", bundle.rows()}};
  return out;
}

}  // namespace ctts
