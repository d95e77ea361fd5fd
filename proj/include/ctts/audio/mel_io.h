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

#ifndef CTTS_AUDIO_MEL_IO_H_
#define CTTS_AUDIO_MEL_IO_H_

#include <filesystem>
#include <string>

#include "ctts/audio/mel.h"

namespace ctts {

// Little-endian layout:
//   "MEL1" | u32 n_mels | u32 n_frames | f32 sample_rate | u32 hop |
//   f32 payload, row-major n_frames x n_mels.
// Config fields not in the header come back at their defaults.
std::string EncodeMel(const MelSpectrogram& mel);
MelSpectrogram DecodeMel(const std::string& bytes);

void WriteMel(const MelSpectrogram& mel, const std::filesystem::path& path);
MelSpectrogram ReadMel(const std::filesystem::path& path);

}  // namespace ctts

#endif  // CTTS_AUDIO_MEL_IO_H_
