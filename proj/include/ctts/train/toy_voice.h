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

#ifndef CTTS_TRAIN_TOY_VOICE_H_
#define CTTS_TRAIN_TOY_VOICE_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "ctts/audio/wav.h"
#include "ctts/text/lexicon.h"
#include "ctts/text/phonemizer.h"
#include "ctts/train/embedding.h"

namespace ctts {

// Deterministic synthetic voice: each phone id maps to a fixed harmonic
// template, shifted in pitch by speaker and in pitch and level by emotion.
// Word boundaries and punctuation are silences.
Waveform ToyVoice(const PhonemeSequence& phones, const PhoneInventory& inventory,
                  const std::string& speaker, const std::string& emotion,
                  int sample_rate = kDefaultSampleRate, int phone_ms = 50);

struct ToyCorpusOptions {
  std::vector<std::string> speakers = {"alice", "bob"};
  std::vector<std::string> emotions = {"amused", "angry"};
  std::vector<std::string> sentences = {"go away", "come here", "thank you", "not again"};
  // Utterances per (speaker, emotion); sentences are used round robin.
  int utterances_per_pair = 2;
  int sample_rate = kDefaultSampleRate;
  int phone_ms = 50;
};

struct ToyCorpusFiles {
  std::filesystem::path speech_manifest;  // speech.jsonl
  std::filesystem::path text_corpus;      // texts.jsonl
};

// Writes wav/*.wav, speech.jsonl (audio paths relative to dir) and a small
// emotional text corpus texts.jsonl labeled positive / negative.
ToyCorpusFiles WriteToyCorpus(const ToyCorpusOptions& options, const Lexicon& lexicon,
                              const std::filesystem::path& dir);

// Normal(0, 1/sqrt(width)) rows for `tokens`, deterministic in `seed`.
EmbeddingBundle RandomEmbeddingBundle(const std::vector<std::string>& tokens, int width,
                                      uint64_t seed);

}  // namespace ctts

#endif  // CTTS_TRAIN_TOY_VOICE_H_
