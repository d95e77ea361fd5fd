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

#ifndef CTTS_DATASET_MANIFEST_H_
#define CTTS_DATASET_MANIFEST_H_

#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "ctts/dataset/types.h"

namespace ctts {

// Speech manifest: JSONL with id, audio_path, content, speaker, emotion.
// Relative audio paths resolve against the manifest's directory and must
// point at a readable file.
std::vector<SpeechSample> IngestSpeechManifest(const std::filesystem::path& path,
                                               const std::set<std::string>& emotion_set);

// Text corpus: JSONL with text, emotion. Text is whitespace-trimmed.
std::vector<ContextText> IngestTextCorpus(const std::filesystem::path& path,
                                          const std::set<std::string>& emotion_set);

// One CTTS record as a single JSON line (no trailing newline), keys in the
// order id, context, speaker, emotion, content, audio_path, split,
// provenance.text_emotion.
std::string SerializeCttsSample(const CttsSample& sample);
std::string SerializeManifest(const std::vector<CttsSample>& samples);
void WriteManifest(const std::vector<CttsSample>& samples,
                   const std::filesystem::path& path);

// Reads a CTTS manifest. With `allow_speech_rows`, plain speech-manifest rows
// are accepted too: missing context reads as blank and missing split as
// train. Relative audio paths resolve against the manifest's directory.
std::vector<CttsSample> ReadManifest(const std::filesystem::path& path,
                                     bool allow_speech_rows = false);

}  // namespace ctts

#endif  // CTTS_DATASET_MANIFEST_H_
