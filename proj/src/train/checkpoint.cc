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

#include "ctts/train/checkpoint.h"

#include <cstring>
#include <vector>

#include "ctts/common/error.h"
#include "ctts/common/file_util.h"

namespace ctts {

namespace {

constexpr char kMagic[4] = {'C', 'T', 'C', 'K'};
constexpr size_t kDigestSize = 64;

struct NamedTensor {
  std::string name;
  const nn::Matrix* value;
};

nn::Matrix RowOf(const std::vector<double>& v) {
  nn::Matrix m(1, v.size());
  for (size_t i = 0; i < v.size(); ++i) m(0, i) = v[i];
  return m;
}

template <typename T>
void Append(std::string* out, T value) {
  out->append(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T ReadScalar(const std::string& bytes, size_t* pos, const std::string& what) {
  if (*pos + sizeof(T) > bytes.size()) throw LoadError(what + ": truncated checkpoint");
  T value;
  std::memcpy(&value, bytes.data() + *pos, sizeof(T));
  *pos += sizeof(T);
  return value;
}

}  // namespace

TrainingAssets TrainingAssets::Load(const std::filesystem::path& vocab_path,
                                    const std::filesystem::path& lexicon_path) {
  TrainingAssets a;
  a.vocab = TextVocab::Load(vocab_path);
  a.lexicon = Lexicon::Load(lexicon_path);
  a.vocab_path = std::filesystem::absolute(vocab_path);
  a.lexicon_path = std::filesystem::absolute(lexicon_path);
  return a;
}

Checkpoint FreshCheckpoint(ModelConfig model_config, const MelConfig& mel_config,
                           const TrainingAssets& assets, uint64_t seed) {
  mel_config.Validate();
  model_config.text_vocab_size = assets.vocab.size();
  model_config.phone_vocab_size = assets.lexicon.inventory().size();
  if (model_config.n_mels != mel_config.n_mels) {
    throw ConfigError("model.n_mels (" + std::to_string(model_config.n_mels) +
                      ") must match mel.n_mels (" + std::to_string(mel_config.n_mels) + ")");
  }
  Checkpoint c;
  c.model_config = model_config;
  c.mel_config = mel_config;
  c.params = InitParams(model_config, seed);
  c.seed = seed;
  c.vocab_path = assets.vocab_path.string();
  c.vocab_digest = assets.vocab.Digest();
  c.lexicon_path = assets.lexicon_path.string();
  c.lexicon_digest = assets.lexicon.digest();
  return c;
}

void SaveCheckpoint(const Checkpoint& ckpt, const std::filesystem::path& path) {
  std::vector<NamedTensor> tensors;
  const auto& t = ckpt.params.tensors;
  for (int i = 0; i < t.size(); ++i) tensors.push_back({t.Name(i), &t[i]});
  const nn::Matrix mean = RowOf(ckpt.params.stats.mean);
  const nn::Matrix stddev = RowOf(ckpt.params.stats.stddev);
  if (!ckpt.params.stats.empty()) {
    tensors.push_back({"stats.mean", &mean});
    tensors.push_back({"stats.stddev", &stddev});
  }
  if (!ckpt.optimizer.empty()) {
    for (int i = 0; i < t.size(); ++i) {
      tensors.push_back({"adam.m/" + t.Name(i), &ckpt.optimizer.m[i]});
      tensors.push_back({"adam.v/" + t.Name(i), &ckpt.optimizer.v[i]});
    }
  }

  nlohmann::json manifest = nlohmann::json::array();
  std::string payload;
  for (const auto& nt : tensors) {
    manifest.push_back({{"name", nt.name}, {"rows", nt.value->rows()},
                        {"cols", nt.value->cols()}});
    payload.append(reinterpret_cast<const char*>(nt.value->data()),
                   sizeof(double) * nt.value->size());
  }
  nlohmann::json header = {
      {"model", ckpt.model_config},
      {"mel", ckpt.mel_config},
      {"stage", ckpt.stage},
      {"step", ckpt.step},
      {"seed", ckpt.seed},
      {"variant", ckpt.variant},
      {"context_mode", ContextModeName(ckpt.context_mode)},
      {"vocab", {{"path", ckpt.vocab_path}, {"sha256", ckpt.vocab_digest}}},
      {"lexicon", {{"path", ckpt.lexicon_path}, {"sha256", ckpt.lexicon_digest}}},
      {"adam_t", ckpt.optimizer.t},
      {"metadata", ckpt.metadata},
      {"tensors", manifest},
  };
  const std::string header_text = header.dump();

  std::string bytes(kMagic, sizeof(kMagic));
  Append<uint32_t>(&bytes, kCheckpointVersion);
  Append<uint64_t>(&bytes, header_text.size());
  bytes += header_text;
  Append<uint64_t>(&bytes, payload.size());
  bytes += payload;
  bytes += Sha256Hex(std::string_view(bytes).substr(sizeof(kMagic)));
  WriteFileAtomic(path, bytes);
}

Checkpoint LoadCheckpoint(const std::filesystem::path& path) {
  std::string bytes;
  try {
    bytes = ReadFileToString(path);
  } catch (const Error& e) {
    throw LoadError(std::string("cannot read checkpoint: ") + e.what());
  }
  const std::string what = path.string();
  if (bytes.size() < sizeof(kMagic) || std::memcmp(bytes.data(), kMagic, 4) != 0) {
    throw LoadError(what + ": not a ctts checkpoint");
  }
  size_t pos = sizeof(kMagic);
  const auto version = ReadScalar<uint32_t>(bytes, &pos, what);
  if (version != kCheckpointVersion) {
    throw LoadError(what + ": checkpoint format version " + std::to_string(version) +
                    ", this build reads version " + std::to_string(kCheckpointVersion));
  }
  if (bytes.size() < pos + kDigestSize) throw LoadError(what + ": truncated checkpoint");
  const size_t body_end = bytes.size() - kDigestSize;
  if (Sha256Hex(std::string_view(bytes).substr(4, body_end - 4)) != bytes.substr(body_end)) {
    throw LoadError(what + ": checkpoint digest mismatch (file is corrupt or was modified)");
  }
  const auto header_len = ReadScalar<uint64_t>(bytes, &pos, what);
  if (pos + header_len > body_end) throw LoadError(what + ": truncated header");
  nlohmann::json header;
  try {
    header = nlohmann::json::parse(bytes.substr(pos, header_len));
  } catch (const nlohmann::json::exception& e) {
    throw LoadError(what + ": bad checkpoint header: " + e.what());
  }
  pos += header_len;
  const auto payload_len = ReadScalar<uint64_t>(bytes, &pos, what);
  if (pos + payload_len != body_end) throw LoadError(what + ": payload size mismatch");

  Checkpoint c;
  try {
    c.model_config = header.at("model").get<ModelConfig>();
    c.mel_config = header.at("mel").get<MelConfig>();
    c.stage = header.at("stage").get<std::string>();
    c.step = header.at("step").get<int64_t>();
    c.seed = header.at("seed").get<uint64_t>();
    c.variant = header.at("variant").get<std::string>();
    c.context_mode = ParseContextMode(header.at("context_mode").get<std::string>());
    c.vocab_path = header.at("vocab").at("path").get<std::string>();
    c.vocab_digest = header.at("vocab").at("sha256").get<std::string>();
    c.lexicon_path = header.at("lexicon").at("path").get<std::string>();
    c.lexicon_digest = header.at("lexicon").at("sha256").get<std::string>();
    c.optimizer.t = header.at("adam_t").get<int64_t>();
    c.metadata = header.at("metadata");
  } catch (const nlohmann::json::exception& e) {
    throw LoadError(what + ": bad checkpoint header: " + e.what());
  } catch (const ConfigError& e) {
    throw LoadError(what + ": bad checkpoint header: " + e.what());
  }

  std::vector<std::pair<std::string, nn::Matrix>> adam;
  try {
    for (const auto& entry : header.at("tensors")) {
      const auto name = entry.at("name").get<std::string>();
      const auto rows = entry.at("rows").get<int64_t>();
      const auto cols = entry.at("cols").get<int64_t>();
      const size_t n = static_cast<size_t>(rows * cols) * sizeof(double);
      if (rows < 0 || cols < 0 || pos + n > body_end) {
        throw LoadError(what + ": tensor " + name + " exceeds payload");
      }
      nn::Matrix m(rows, cols);
      std::memcpy(m.data(), bytes.data() + pos, n);
      pos += n;
      if (name == "stats.mean" || name == "stats.stddev") {
        auto& dst = name == "stats.mean" ? c.params.stats.mean : c.params.stats.stddev;
        dst.assign(m.data(), m.data() + m.size());
      } else if (name.rfind("adam.", 0) == 0) {
        adam.emplace_back(name, std::move(m));
      } else {
        c.params.tensors.Add(name, std::move(m));
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw LoadError(what + ": bad tensor manifest: " + e.what());
  }
  if (pos != body_end) throw LoadError(what + ": unused payload bytes");

  if (!adam.empty()) {
    const auto& t = c.params.tensors;
    if (adam.size() != 2 * static_cast<size_t>(t.size())) {
      throw LoadError(what + ": optimizer state does not cover every tensor");
    }
    for (int i = 0; i < t.size(); ++i) {
      if (adam[2 * i].first != "adam.m/" + t.Name(i) ||
          adam[2 * i + 1].first != "adam.v/" + t.Name(i)) {
        throw LoadError(what + ": optimizer state out of order at " + t.Name(i));
      }
      c.optimizer.m.push_back(std::move(adam[2 * i].second));
      c.optimizer.v.push_back(std::move(adam[2 * i + 1].second));
    }
  }
  try {
    c.model_config.Validate();
    c.mel_config.Validate();
    CheckParamShapes(c.params, c.model_config);
  } catch (const ConfigError& e) {
    throw LoadError(what + ": " + e.what());
  }
  return c;
}

void VerifyAssets(const Checkpoint& ckpt, const TrainingAssets& assets) {
  if (assets.vocab.Digest() != ckpt.vocab_digest) {
    throw LoadError("text vocabulary " + assets.vocab_path.string() +
                    " differs from the one the checkpoint was trained with (sha256 " +
                    ckpt.vocab_digest + ")");
  }
  if (assets.lexicon.digest() != ckpt.lexicon_digest) {
    throw LoadError("lexicon " + assets.lexicon_path.string() +
                    " differs from the one the checkpoint was trained with (sha256 " +
                    ckpt.lexicon_digest + ")");
  }
}

TrainingAssets LoadCheckpointAssets(const Checkpoint& ckpt) {
  TrainingAssets assets;
  try {
    assets = TrainingAssets::Load(ckpt.vocab_path, ckpt.lexicon_path);
  } catch (const Error& e) {
    throw LoadError(std::string("cannot load checkpoint assets: ") + e.what());
  }
  VerifyAssets(ckpt, assets);
  return assets;
}

}  // namespace ctts
