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

#include "ctts/eval/harness.h"

#include <iomanip>
#include <sstream>

#include <spdlog/spdlog.h>

#include "ctts/common/error.h"
#include "ctts/common/file_util.h"
#include "ctts/common/process.h"
#include "ctts/common/string_util.h"
#include "ctts/dataset/manifest.h"

namespace ctts {

namespace {

void Score(EvalRow* row, VariantResult* result) {
  const auto ref = NormalizeTranscript(row->reference);
  const auto hyp = NormalizeTranscript(row->hypothesis);
  const WerResult w = Wer(ref, hyp);
  row->substitutions = w.substitutions;
  row->insertions = w.insertions;
  row->deletions = w.deletions;
  row->reference_words = static_cast<int>(ref.size());
  result->errors += w.errors();
  result->reference_words += row->reference_words;
}

void Fail(EvalRow* row, VariantResult* result, const std::string& what) {
  row->error = what;
  ++result->failures;
  spdlog::warn("{}: sample {} failed: {}", result->name, row->id, what);
}

std::string Fixed(double v) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(4) << v;
  return os.str();
}

}  // namespace

AsrClient AsrClient::External(std::string command) {
  AsrClient c;
  c.kind = Kind::kExternalCommand;
  c.command = std::move(command);
  return c;
}

AsrClient AsrClient::Echo(std::string transcript) {
  return EchoFn([t = std::move(transcript)](const std::filesystem::path&) { return t; });
}

AsrClient AsrClient::EchoFn(std::function<std::string(const std::filesystem::path&)> fn) {
  AsrClient c;
  c.stub = std::move(fn);
  return c;
}

void AsrClient::Validate() const {
  if (kind == Kind::kExternalCommand) {
    if (command.find("{wav}") == std::string::npos) {
      throw ConfigError("asr: external command must contain {wav}");
    }
  } else if (!stub) {
    throw ConfigError("asr: echo stub has no transcript");
  }
}

std::string Transcribe(const std::filesystem::path& wav, const AsrClient& client) {
  client.Validate();
  if (client.kind == AsrClient::Kind::kEchoStub) return client.stub(wav);
  if (!std::filesystem::exists(wav)) {
    throw TranscriptionError("audio file not found: " + wav.string());
  }
  std::string cmd = client.command;
  ReplaceAll(&cmd, "{wav}", ShellQuote(wav.string()));
  const CommandResult r = RunCommand(cmd);
  if (r.exit_code != 0) {
    throw TranscriptionError("asr command exited with " + std::to_string(r.exit_code) + ": " +
                             cmd + (r.stderr_text.empty() ? "" : "\n" + Trim(r.stderr_text)));
  }
  return Trim(r.stdout_text);
}

const std::vector<std::pair<std::string, double>>& PublishedWerReference() {
  static const std::vector<std::pair<std::string, double>> kRef = {
      {kRefColumn, 0.1401}, {"M-CTTS", 0.1342}, {"M-LTTS", 0.1122},
      {"M-CTTS-NT", 0.2186}, {"M-TTS", 0.0734}};
  return kRef;
}

const VariantResult* EvalReport::Find(const std::string& name) const {
  for (const auto& v : variants) {
    if (v.name == name) return &v;
  }
  return nullptr;
}

nlohmann::json EvalReport::ToJson() const {
  nlohmann::ordered_json j;
  j["pooling"] = "corpus: total edit operations / total reference words";
  j["metadata"] = metadata;
  nlohmann::ordered_json vs = nlohmann::ordered_json::array();
  for (const auto& v : variants) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& r : v.rows) {
      nlohmann::ordered_json row = {{"id", r.id},
                                    {"reference", r.reference},
                                    {"hypothesis", r.hypothesis},
                                    {"substitutions", r.substitutions},
                                    {"insertions", r.insertions},
                                    {"deletions", r.deletions},
                                    {"reference_words", r.reference_words}};
      if (!r.error.empty()) row["error"] = r.error;
      rows.push_back(row);
    }
    vs.push_back({{"name", v.name},
                  {"wer", v.wer()},
                  {"errors", v.errors},
                  {"reference_words", v.reference_words},
                  {"failures", v.failures},
                  {"rows", rows}});
  }
  j["variants"] = vs;
  nlohmann::ordered_json published = nlohmann::ordered_json::object();
  for (const auto& [name, value] : PublishedWerReference()) published[name] = value;
  j["paper_reference"] = {{"note", "paper, not reproduced"}, {"wer", published}};
  j["table"] = RenderTable();
  return j;
}

std::string EvalReport::RenderTable() const {
  const auto& columns = PublishedWerReference();
  const int label_width = 29;
  const int width = 11;
  std::ostringstream os;
  os << std::left << std::setw(label_width) << "Metrics";
  for (const auto& [name, value] : columns) os << std::right << std::setw(width) << name;
  os << "\n";
  os << std::left << std::setw(label_width) << "WER (measured)";
  for (const auto& [name, value] : columns) {
    const VariantResult* v = Find(name);
    os << std::right << std::setw(width)
       << (v != nullptr && v->reference_words > 0 ? Fixed(v->wer()) : "n/a");
  }
  os << "\n";
  os << std::left << std::setw(label_width) << "WER (paper, not reproduced)";
  for (const auto& [name, value] : columns) os << std::right << std::setw(width) << Fixed(value);
  os << "\n";
  return os.str();
}

EvalReport EvaluateCorpus(
    const std::filesystem::path& manifest,
    const std::vector<std::pair<std::string, std::filesystem::path>>& variants,
    const VocoderBackend& backend, const AsrClient& client, const EvalOptions& options) {
  backend.Validate();
  client.Validate();
  std::vector<CttsSample> test;
  for (auto& s : ReadManifest(manifest)) {
    if (s.split == Split::kTest) test.push_back(std::move(s));
  }
  if (test.empty()) throw ValidationError("manifest " + manifest.string() + " has no test rows");

  EvalReport report;
  report.metadata = {{"manifest", manifest.string()},
                     {"test_samples", test.size()},
                     {"vocoder", backend.Describe()}};

  if (options.include_reference) {
    VariantResult ref;
    ref.name = kRefColumn;
    for (const auto& s : test) {
      EvalRow row;
      row.id = s.id;
      row.reference = s.content;
      try {
        row.hypothesis = Transcribe(s.audio_path, client);
        Score(&row, &ref);
      } catch (const Error& e) {
        Fail(&row, &ref, e.what());
      }
      ref.rows.push_back(row);
    }
    report.variants.push_back(std::move(ref));
  }

  for (const auto& [name, ckpt_path] : variants) {
    VariantResult result;
    result.name = name;
    std::optional<Synthesizer> synth;
    std::string load_error;
    try {
      synth.emplace(Synthesizer::Load(ckpt_path));
    } catch (const Error& e) {
      load_error = std::string("checkpoint ") + ckpt_path.string() + ": " + e.what();
    }
    for (const auto& s : test) {
      EvalRow row;
      row.id = s.id;
      row.reference = s.content;
      if (!synth.has_value()) {
        Fail(&row, &result, load_error);
        result.rows.push_back(row);
        continue;
      }
      try {
        SynthesisRequest req;
        req.context = s.context;
        req.content = s.content;
        req.emotion = s.emotion;
        req.speaker = s.speaker;
        req.checkpoint = ckpt_path;
        req.stop_threshold = options.stop_threshold;
        req.max_frames = options.max_frames;
        std::string file = s.id;
        for (char& c : file) {
          if (c == '/' || c == '#') c = '_';
        }
        const auto wav = options.work_dir / name / (file + ".wav");
        Synthesize(*synth, req, backend, wav);
        row.hypothesis = Transcribe(wav, client);
        Score(&row, &result);
      } catch (const Error& e) {
        Fail(&row, &result, e.what());
      }
      result.rows.push_back(row);
    }
    if (result.failures > 0) {
      spdlog::warn("{}: {} of {} samples failed and are excluded from the WER", name,
                   result.failures, test.size());
    }
    report.variants.push_back(std::move(result));
  }
  return report;
}

}  // namespace ctts
