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

// Test double for an external ASR: `asr_sidecar_stub WAV [MANIFEST]` prints
// the content recorded in WAV's synthesis sidecar, or failing that the
// content of the MANIFEST row whose audio_path is WAV.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "json.hpp"

int main(int argc, char** argv) {
  if (argc < 2 || argc > 3) {
    std::cerr << "usage: asr_sidecar_stub WAV [MANIFEST]\n";
    return 2;
  }
  const std::filesystem::path wav = argv[1];
  std::ifstream sidecar(std::filesystem::path(wav).replace_extension(".json"));
  if (sidecar) {
    std::cout << nlohmann::json::parse(sidecar)["request"]["content"].get<std::string>()
              << "\n";
    return 0;
  }
  if (argc == 3) {
    std::ifstream manifest(argv[2]);
    std::string line;
    while (std::getline(manifest, line)) {
      if (line.empty()) continue;
      const auto row = nlohmann::json::parse(line);
      if (std::filesystem::path(row["audio_path"].get<std::string>()) == wav) {
        std::cout << row["content"].get<std::string>() << "\n";
        return 0;
      }
    }
  }
  std::cerr << "no transcript for " << wav << "\n";
  return 1;
}
