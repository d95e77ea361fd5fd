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

#include "ctts/dataset/manifest.h"

#include <fstream>
#include <sstream>

#include "json.hpp"

#include "ctts/common/error.h"
#include "ctts/common/file_util.h"
#include "ctts/common/string_util.h"

namespace ctts {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

struct JsonLine {
  int line_no;
  json value;
};

std::vector<JsonLine> ReadJsonLines(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<JsonLine> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    try {
      json value = json::parse(line);
      if (!value.is_object()) throw ParseError("not a JSON object");
      rows.push_back({line_no, std::move(value)});
    } catch (const json::exception& e) {
      throw ParseError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    } catch (const ParseError& e) {
      throw ParseError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (in.bad()) throw IoError("read failed for " + path.string());
  return rows;
}

std::string Field(const JsonLine& row, const fs::path& path, const char* key) {
  auto it = row.value.find(key);
  if (it == row.value.end() || !it->is_string()) {
    throw ParseError(path.string() + ":" + std::to_string(row.line_no) +
                     ": missing string field '" + key + "'");
  }
  return it->get<std::string>();
}

std::string OptionalField(const JsonLine& row, const fs::path& path, const char* key,
                          const std::string& fallback) {
  if (!row.value.contains(key)) return fallback;
  return Field(row, path, key);
}

bool Readable(const fs::path& p) {
  std::error_code ec;
  if (!fs::is_regular_file(p, ec)) return false;
  std::ifstream in(p, std::ios::binary);
  return static_cast<bool>(in);
}

}  // namespace

std::vector<SpeechSample> IngestSpeechManifest(const fs::path& path,
                                               const std::set<std::string>& emotion_set) {
  const fs::path base = path.parent_path();
  std::vector<SpeechSample> out;
  for (const auto& row : ReadJsonLines(path)) {
    SpeechSample s;
    s.id = Field(row, path, "id");
    s.audio_path = ResolvePath(base, Field(row, path, "audio_path")).string();
    s.content = Field(row, path, "content");
    s.speaker = Field(row, path, "speaker");
    s.emotion = Field(row, path, "emotion");
    if (Trim(s.content).empty()) {
      throw ValidationError("speech sample '" + s.id + "': empty content");
    }
    if (emotion_set.count(s.emotion) == 0) {
      throw ValidationError("speech sample '" + s.id + "': emotion '" + s.emotion +
                            "' is not in the configured set");
    }
    if (!Readable(s.audio_path)) {
      throw ValidationError("speech sample '" + s.id + "': audio not readable: " +
                            s.audio_path);
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<ContextText> IngestTextCorpus(const fs::path& path,
                                          const std::set<std::string>& emotion_set) {
  std::vector<ContextText> out;
  for (const auto& row : ReadJsonLines(path)) {
    ContextText t;
    t.text = Trim(Field(row, path, "text"));
    t.emotion = Field(row, path, "emotion");
    const std::string where = path.string() + ":" + std::to_string(row.line_no);
    if (t.text.empty()) throw ValidationError(where + ": empty text");
    if (emotion_set.count(t.emotion) == 0) {
      throw ValidationError(where + ": emotion '" + t.emotion +
                            "' is not in the configured set");
    }
    out.push_back(std::move(t));
  }
  return out;
}

std::string SerializeCttsSample(const CttsSample& s) {
  if (s.split == Split::kUnassigned) {
    throw ValidationError("sample '" + s.id + "' has no split assigned");
  }
  ordered_json j;
  j["id"] = s.id;
  j["context"] = s.context;
  j["speaker"] = s.speaker;
  j["emotion"] = s.emotion;
  j["content"] = s.content;
  j["audio_path"] = s.audio_path;
  j["split"] = SplitName(s.split);
  j["provenance"] = ordered_json{{"text_emotion", s.text_emotion}};
  return j.dump();
}

std::string SerializeManifest(const std::vector<CttsSample>& samples) {
  std::string out;
  for (const auto& s : samples) {
    out += SerializeCttsSample(s);
    out += '\n';
  }
  return out;
}

void WriteManifest(const std::vector<CttsSample>& samples, const fs::path& path) {
  WriteFileAtomic(path, SerializeManifest(samples));
}

std::vector<CttsSample> ReadManifest(const fs::path& path, bool allow_speech_rows) {
  const fs::path base = path.parent_path();
  std::vector<CttsSample> out;
  for (const auto& row : ReadJsonLines(path)) {
    CttsSample s;
    s.id = Field(row, path, "id");
    s.speaker = Field(row, path, "speaker");
    s.emotion = Field(row, path, "emotion");
    s.content = Field(row, path, "content");
    s.audio_path = ResolvePath(base, Field(row, path, "audio_path")).string();
    if (allow_speech_rows) {
      s.context = OptionalField(row, path, "context", "");
      s.split = ParseSplit(OptionalField(row, path, "split", "train"));
    } else {
      s.context = Field(row, path, "context");
      s.split = ParseSplit(Field(row, path, "split"));
    }
    auto prov = row.value.find("provenance");
    if (prov != row.value.end() && prov->is_object()) {
      s.text_emotion = prov->value("text_emotion", "");
    }
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace ctts
