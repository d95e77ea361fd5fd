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

#include "ctts/dataset/types.h"

#include "ctts/common/error.h"

namespace ctts {

EmotionMap DefaultEmotionMap() {
  return {{"amused", "positive"}, {"angry", "negative"}};
}

const char* SplitName(Split split) {
  switch (split) {
    case Split::kTrain:
      return "train";
    case Split::kValid:
      return "valid";
    case Split::kTest:
      return "test";
    case Split::kUnassigned:
      break;
  }
  return "unassigned";
}

Split ParseSplit(const std::string& name) {
  if (name == "train") return Split::kTrain;
  if (name == "valid") return Split::kValid;
  if (name == "test") return Split::kTest;
  throw ParseError("unknown split '" + name + "'");
}

std::string CttsSample::BaseId() const {
  size_t hash = id.rfind('#');
  return hash == std::string::npos ? id : id.substr(0, hash);
}

}  // namespace ctts
