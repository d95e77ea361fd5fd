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

#ifndef CTTS_COMMON_ERROR_H_
#define CTTS_COMMON_ERROR_H_

#include <stdexcept>
#include <string>

namespace ctts {

// Every failure raised by the toolkit derives from Error. The CLI maps
// user-correctable kinds (validation, config, parse, format) to exit code 1
// and the rest to exit code 2.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
  virtual bool UserError() const { return false; }
};

#define CTTS_DEFINE_ERROR(Name, user)                         \
  class Name : public Error {                                 \
   public:                                                    \
    explicit Name(const std::string& what) : Error(what) {}   \
    bool UserError() const override { return user; }          \
  };

CTTS_DEFINE_ERROR(ValidationError, true)
CTTS_DEFINE_ERROR(ConfigError, true)
CTTS_DEFINE_ERROR(ParseError, true)
CTTS_DEFINE_ERROR(FormatError, true)
CTTS_DEFINE_ERROR(IoError, false)
CTTS_DEFINE_ERROR(LimitError, false)
CTTS_DEFINE_ERROR(LoadError, false)
CTTS_DEFINE_ERROR(TrainingError, false)
CTTS_DEFINE_ERROR(BackendError, false)
CTTS_DEFINE_ERROR(TranscriptionError, false)

#undef CTTS_DEFINE_ERROR

}  // namespace ctts

#endif  // CTTS_COMMON_ERROR_H_
