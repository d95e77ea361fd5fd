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

#include "ctts/train/toy_voice.h"

#include <cmath>
#include <numbers>

#include "ctts/common/error.h"
#include "ctts/common/file_util.h"
#include "ctts/common/random.h"
#include "json.hpp"

namespace ctts {

namespace {

constexpr double kFadeSeconds = 0.005;

double UnitHash(uint64_t a, uint64_t b) {
  return static_cast<double>(CombineSeeds(a, b) >> 11) * 0x1.0p-53;
}

double EmotionPitch(const std::string& emotion) {
  if (emotion == "angry") return 1.25;
  if (emotion == "amused") return 1.1;
  return 1.0;
}

double EmotionLevel(const std::string& emotion) {
  if (emotion == "angry") return 0.5;
  if (emotion == "amused") return 0.35;
  return 0.3;
}

const std::vector<std::pair<std::string, std::string>>& ToyTexts() {
  static const std::vector<std::pair<std::string, std::string>> kTexts = {
      {"What a lovely surprise, everyone laughed.", "positive"},
      {"The joke made the whole room smile.", "positive"},
      {"She won the prize and danced with joy.", "positive"},
      {"They shared a funny story over dinner.", "positive"},
      {"He broke the window again.", "negative"},
      {"The train was late and nobody cared.", "negative"},
      {"John hit Alice, and Alice was furious.", "negative"},
      {"They shouted at each other all night.", "negative"},
  };
  return kTexts;
}

}  // namespace

Waveform ToyVoice(const PhonemeSequence& phones, const PhoneInventory& inventory,
                  const std::string& speaker, const std::string& emotion, int sample_rate,
                  int phone_ms) {
  if (sample_rate <= 0 || phone_ms <= 0) throw ConfigError("toy voice: invalid rate/duration");
  Waveform w;
  w.sample_rate = sample_rate;
  const double speaker_pitch = 0.8 + 0.4 * UnitHash(Fnv1a64(speaker), 0);
  const double pitch = speaker_pitch * EmotionPitch(emotion);
  const double level = EmotionLevel(emotion);
  const int phone_len = sample_rate * phone_ms / 1000;
  const int fade = static_cast<int>(kFadeSeconds * sample_rate);
  const std::string punctuation = PhoneInventory::kPunctuation;
  for (int id : phones.ids) {
    const std::string& sym = inventory.Symbol(id);
    if (sym == PhoneInventory::kPad || sym == PhoneInventory::kEos) continue;
    if (sym == PhoneInventory::kWordBoundary) {
      w.samples.insert(w.samples.end(), phone_len / 2, 0.0f);
      continue;
    }
    if (sym.size() == 1 && punctuation.find(sym[0]) != std::string::npos) {
      w.samples.insert(w.samples.end(), phone_len, 0.0f);
      continue;
    }
    const double f0 = 110.0 * pitch * (1.0 + UnitHash(id, 1));
    double amps[4];
    double norm = 0.0;
    for (int k = 0; k < 4; ++k) {
      amps[k] = (0.2 + 0.8 * UnitHash(id, 2 + k)) / (k + 1);
      norm += amps[k];
    }
    for (int n = 0; n < phone_len; ++n) {
      const double t = static_cast<double>(n) / sample_rate;
      double v = 0.0;
      for (int k = 0; k < 4; ++k) {
        v += amps[k] * std::sin(2.0 * std::numbers::pi * f0 * (k + 1) * t);
      }
      double env = 1.0;
      if (n < fade) env = static_cast<double>(n) / fade;
      if (phone_len - 1 - n < fade) env = std::min(env, static_cast<double>(phone_len - 1 - n) / fade);
      w.samples.push_back(static_cast<float>(level * env * v / norm));
    }
  }
  if (w.samples.empty()) w.samples.assign(phone_len, 0.0f);
  return w;
}

ToyCorpusFiles WriteToyCorpus(const ToyCorpusOptions& options, const Lexicon& lexicon,
                              const std::filesystem::path& dir) {
  if (options.sentences.empty() || options.speakers.empty() || options.emotions.empty() ||
      options.utterances_per_pair < 1) {
    throw ConfigError("toy corpus: speakers, emotions and sentences must be non-empty");
  }
  std::filesystem::create_directories(dir / "wav");
  std::string speech;
  size_t next_sentence = 0;
  for (const auto& spk : options.speakers) {
    for (const auto& emo : options.emotions) {
      for (int u = 0; u < options.utterances_per_pair; ++u) {
        const std::string& text = options.sentences[next_sentence++ % options.sentences.size()];
        const std::string id = spk + "_" + emo + "_" + std::to_string(u);
        const std::string rel = "wav/" + id + ".wav";
        WriteWav(dir / rel, ToyVoice(Phonemize(text, lexicon), lexicon.inventory(), spk, emo,
                                     options.sample_rate, options.phone_ms));
        nlohmann::ordered_json row = {{"id", id},          {"audio_path", rel},
                                      {"content", text},   {"speaker", spk},
                                      {"emotion", emo}};
        speech += row.dump() + "\n";
      }
    }
  }
  std::string texts;
  for (const auto& [text, emotion] : ToyTexts()) {
    texts += nlohmann::ordered_json({{"text", text}, {"emotion", emotion}}).dump() + "\n";
  }
  ToyCorpusFiles files{dir / "speech.jsonl", dir / "texts.jsonl"};
  WriteFileAtomic(files.speech_manifest, speech);
  WriteFileAtomic(files.text_corpus, texts);
  return files;
}

EmbeddingBundle RandomEmbeddingBundle(const std::vector<std::string>& tokens, int width,
                                      uint64_t seed) {
  EmbeddingBundle b;
  b.tokens = tokens;
  b.width = width;
  Rng rng(seed);
  const double scale = 1.0 / std::sqrt(static_cast<double>(std::max(width, 1)));
  b.values.resize(tokens.size() * static_cast<size_t>(width));
  for (auto& v : b.values) v = static_cast<float>(rng.Normal() * scale);
  return b;
}

}  // namespace ctts
