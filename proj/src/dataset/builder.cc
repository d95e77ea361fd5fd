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

#include "ctts/dataset/builder.h"

#include <cmath>
#include <unordered_map>

#include "ctts/common/error.h"
#include "ctts/common/random.h"
#include "ctts/common/string_util.h"
#include "ctts/dataset/manifest.h"

namespace ctts {

namespace fs = std::filesystem;

std::string RenderContext(const std::string& templ, const std::string& context_text,
                          const std::string& speaker) {
  if (templ.find("{context}") == std::string::npos) {
    throw ConfigError("context template lacks {context}: \"" + templ + "\"");
  }
  std::string out;
  size_t i = 0;
  while (i < templ.size()) {
    if (templ[i] != '{') {
      out.push_back(templ[i++]);
      continue;
    }
    size_t close = templ.find('}', i);
    if (close == std::string::npos) {
      throw ConfigError("unterminated placeholder in template \"" + templ + "\"");
    }
    std::string name = templ.substr(i + 1, close - i - 1);
    if (name == "context") {
      out += context_text;
    } else if (name == "speaker") {
      out += speaker;
    } else {
      throw ConfigError("unknown placeholder {" + name + "} in template \"" + templ + "\"");
    }
    i = close + 1;
  }
  // Empty fields leave doubled or dangling separators behind.
  return CollapseSpaces(out);
}

std::vector<CttsSample> JoinByEmotion(const std::vector<SpeechSample>& speech,
                                      const std::vector<ContextText>& texts,
                                      const EmotionMap& emotion_map, int fanout,
                                      const std::string& templ, uint64_t seed) {
  if (fanout < 1) throw ConfigError("fanout must be >= 1");
  std::unordered_map<std::string, std::vector<size_t>> pools;
  for (size_t i = 0; i < texts.size(); ++i) pools[texts[i].emotion].push_back(i);

  std::vector<CttsSample> out;
  out.reserve(speech.size() * fanout);
  for (const auto& s : speech) {
    auto mapped = emotion_map.find(s.emotion);
    if (mapped == emotion_map.end()) {
      throw ValidationError("emotion map has no entry for speech emotion '" + s.emotion +
                            "'");
    }
    auto pool_it = pools.find(mapped->second);
    if (pool_it == pools.end() || pool_it->second.empty()) {
      throw ValidationError("no context texts with emotion '" + mapped->second +
                            "' for speech emotion '" + s.emotion + "'");
    }
    const auto& pool = pool_it->second;
    Rng rng(CombineSeeds(seed, Fnv1a64(s.id)));
    std::vector<size_t> picks;
    if (pool.size() >= static_cast<size_t>(fanout)) {
      std::vector<size_t> order = pool;
      for (int k = 0; k < fanout; ++k) {
        size_t j = k + static_cast<size_t>(rng.Uniform(order.size() - k));
        std::swap(order[k], order[j]);
        picks.push_back(order[k]);
      }
    } else {
      for (int k = 0; k < fanout; ++k) picks.push_back(pool[rng.Uniform(pool.size())]);
    }
    for (int k = 0; k < fanout; ++k) {
      const ContextText& ct = texts[picks[k]];
      CttsSample c;
      c.id = s.id + "#" + std::to_string(k);
      c.context = RenderContext(templ, ct.text, s.speaker);
      c.speaker = s.speaker;
      c.emotion = s.emotion;
      c.content = s.content;
      c.audio_path = s.audio_path;
      c.text_emotion = ct.emotion;
      out.push_back(std::move(c));
    }
  }
  return out;
}

std::array<size_t, 3> SplitTargets(size_t n, const SplitRatios& r) {
  for (double v : {r.train, r.valid, r.test}) {
    if (!(v >= 0.0 && v <= 1.0)) throw ConfigError("split ratio outside [0, 1]");
  }
  if (std::abs(r.train + r.valid + r.test - 1.0) > 1e-9) {
    throw ConfigError("split ratios must sum to 1");
  }
  // The epsilon keeps e.g. 0.29 * 100 from flooring to 28.
  auto floor_count = [n](double ratio) {
    return static_cast<size_t>(std::floor(ratio * static_cast<double>(n) + 1e-9));
  };
  size_t n_train = std::min(n, floor_count(r.train));
  size_t n_valid = std::min(n - n_train, floor_count(r.valid));
  return {n_train, n_valid, n - n_train - n_valid};
}

std::vector<CttsSample> SplitDataset(std::vector<CttsSample> samples,
                                     const SplitRatios& ratios, uint64_t seed) {
  if (samples.size() < 3) throw ValidationError("split_dataset needs at least 3 samples");
  const auto targets = SplitTargets(samples.size(), ratios);

  std::vector<std::string> group_ids;
  std::unordered_map<std::string, std::vector<size_t>> members;
  for (size_t i = 0; i < samples.size(); ++i) {
    std::string base = samples[i].BaseId();
    auto [it, inserted] = members.try_emplace(base);
    if (inserted) group_ids.push_back(base);
    it->second.push_back(i);
  }
  Rng rng(seed);
  rng.Shuffle(&group_ids);

  std::array<std::vector<std::string>, 3> assigned;
  const double train_end = static_cast<double>(targets[0]);
  const double valid_end = train_end + static_cast<double>(targets[1]);
  size_t cursor = 0;
  for (const auto& g : group_ids) {
    const double mid = cursor + members[g].size() / 2.0;
    int split = mid < train_end ? 0 : (mid < valid_end ? 1 : 2);
    assigned[split].push_back(g);
    cursor += members[g].size();
  }
  for (int split : {1, 2}) {
    if (targets[split] > 0 && assigned[split].empty() && assigned[0].size() > 1) {
      assigned[split].push_back(assigned[0].back());
      assigned[0].pop_back();
    }
  }
  static constexpr Split kSplits[] = {Split::kTrain, Split::kValid, Split::kTest};
  for (int split = 0; split < 3; ++split) {
    for (const auto& g : assigned[split]) {
      for (size_t i : members[g]) samples[i].split = kSplits[split];
    }
  }
  return samples;
}

DatasetSummary BuildDataset(const DatasetConfig& config, const fs::path& out_dir,
                            uint64_t seed) {
  std::set<std::string> speech_emotions = config.speech_emotions;
  std::set<std::string> text_emotions = config.text_emotions;
  for (const auto& [speech_emo, text_emo] : config.emotion_map) {
    if (config.speech_emotions.empty()) speech_emotions.insert(speech_emo);
    if (config.text_emotions.empty()) text_emotions.insert(text_emo);
  }
  for (const auto& e : speech_emotions) {
    if (config.emotion_map.count(e) == 0) {
      throw ConfigError("emotion_map has no entry for speech emotion '" + e + "'");
    }
  }
  auto speech = IngestSpeechManifest(config.speech_manifest, speech_emotions);
  auto texts = IngestTextCorpus(config.text_corpus, text_emotions);
  auto joined = JoinByEmotion(speech, texts, config.emotion_map, config.fanout,
                              config.context_template, seed);
  auto split = SplitDataset(std::move(joined), config.ratios, seed);

  DatasetSummary summary;
  summary.speech_samples = speech.size();
  summary.context_texts = texts.size();
  std::array<std::vector<CttsSample>, 3> parts;
  for (const auto& s : split) {
    switch (s.split) {
      case Split::kTrain:
        parts[0].push_back(s);
        break;
      case Split::kValid:
        parts[1].push_back(s);
        break;
      default:
        parts[2].push_back(s);
        break;
    }
  }
  summary.train = parts[0].size();
  summary.valid = parts[1].size();
  summary.test = parts[2].size();
  fs::create_directories(out_dir);
  WriteManifest(split, out_dir / "ctts.jsonl");
  WriteManifest(parts[0], out_dir / "train.jsonl");
  WriteManifest(parts[1], out_dir / "valid.jsonl");
  WriteManifest(parts[2], out_dir / "test.jsonl");
  return summary;
}

}  // namespace ctts
