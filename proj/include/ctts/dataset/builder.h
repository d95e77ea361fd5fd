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

#ifndef CTTS_DATASET_BUILDER_H_
#define CTTS_DATASET_BUILDER_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "ctts/dataset/types.h"

namespace ctts {

inline constexpr const char* kDefaultContextTemplate = "{context} {speaker} said:";

// Substitutes {context} and {speaker}, then collapses whitespace so joined
// segments are separated by exactly one space. Any other {placeholder}
// raises ConfigError.
std::string RenderContext(const std::string& templ, const std::string& context_text,
                          const std::string& speaker);

// Pairs every speech sample with `fanout` context texts from the pool whose
// emotion is emotion_map[speech.emotion]. Draws are without replacement when
// the pool is large enough, with replacement otherwise. Randomness is keyed
// per speech id, so output depends only on (seed, inputs). Ids are
// "{speech.id}#{k}".
std::vector<CttsSample> JoinByEmotion(const std::vector<SpeechSample>& speech,
                                      const std::vector<ContextText>& texts,
                                      const EmotionMap& emotion_map, int fanout,
                                      const std::string& templ, uint64_t seed);

struct SplitRatios {
  double train = 0.90;
  double valid = 0.05;
  double test = 0.05;
};

// Per-split sample-count targets: floor on train and valid, remainder to test.
std::array<size_t, 3> SplitTargets(size_t n, const SplitRatios& ratios);

// Assigns splits group-wise on BaseId() so fanout siblings share a split.
// Groups are shuffled by `seed` and laid out end to end; each group goes to
// the split containing its midpoint. A split with a nonzero target that ends
// up empty takes the last train group. Output keeps the input order.
std::vector<CttsSample> SplitDataset(std::vector<CttsSample> samples,
                                     const SplitRatios& ratios, uint64_t seed);

struct DatasetConfig {
  std::filesystem::path speech_manifest;
  std::filesystem::path text_corpus;
  std::set<std::string> speech_emotions;  // empty: keys of emotion_map
  std::set<std::string> text_emotions;    // empty: values of emotion_map
  EmotionMap emotion_map = DefaultEmotionMap();
  std::string context_template = kDefaultContextTemplate;
  int fanout = 3;
  SplitRatios ratios;
};

struct DatasetSummary {
  size_t speech_samples = 0;
  size_t context_texts = 0;
  size_t train = 0, valid = 0, test = 0;
};

// ingest -> join -> split, then writes ctts.jsonl plus train/valid/test.jsonl
// under out_dir.
DatasetSummary BuildDataset(const DatasetConfig& config,
                            const std::filesystem::path& out_dir, uint64_t seed);

}  // namespace ctts

#endif  // CTTS_DATASET_BUILDER_H_
