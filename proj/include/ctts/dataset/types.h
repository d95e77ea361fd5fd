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

#ifndef CTTS_DATASET_TYPES_H_
#define CTTS_DATASET_TYPES_H_

#include <map>
#include <string>

namespace ctts {

// One expressive-speech recording: speech, its content text x and labels.
struct SpeechSample {
  std::string id;
  std::string audio_path;
  std::string content;
  std::string speaker;
  std::string emotion;

  bool operator==(const SpeechSample&) const = default;
};

// A sentence from the emotional text corpus.
struct ContextText {
  std::string text;
  std::string emotion;

  bool operator==(const ContextText&) const = default;
};

// speech-emotion label -> text-emotion label.
using EmotionMap = std::map<std::string, std::string>;

EmotionMap DefaultEmotionMap();

enum class Split { kUnassigned, kTrain, kValid, kTest };

const char* SplitName(Split split);
// Throws ParseError for anything but "train", "valid", "test".
Split ParseSplit(const std::string& name);

// A joined (context c, content x, speech) record.
struct CttsSample {
  std::string id;
  std::string context;
  std::string speaker;
  std::string emotion;
  std::string content;
  std::string audio_path;
  Split split = Split::kUnassigned;
  // Emotion of the ContextText the context was rendered from.
  std::string text_emotion;

  // The SpeechSample id this record was derived from ("e1" for "e1#2").
  std::string BaseId() const;

  bool operator==(const CttsSample&) const = default;
};

}  // namespace ctts

#endif  // CTTS_DATASET_TYPES_H_
