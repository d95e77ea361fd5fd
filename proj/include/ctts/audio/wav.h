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

#ifndef CTTS_AUDIO_WAV_H_
#define CTTS_AUDIO_WAV_H_

#include <filesystem>
#include <string>
#include <vector>

namespace ctts {

inline constexpr int kDefaultSampleRate = 22050;

struct Waveform {
  std::vector<float> samples;  // mono, nominally in [-1, 1]
  int sample_rate = kDefaultSampleRate;

  double DurationSeconds() const {
    return sample_rate > 0 ? static_cast<double>(samples.size()) / sample_rate : 0.0;
  }
};

// Raw multi-channel contents of a WAV file, de-interleaved.
struct WavData {
  int sample_rate = 0;
  std::vector<std::vector<float>> channels;
};

// Reads 16-bit PCM or 32-bit float WAV. Throws IoError on unreadable or
// malformed files.
WavData ReadWav(const std::filesystem::path& path);

// Writes `channels` as 16-bit PCM, clipping to [-1, 1].
void WriteWav(const std::filesystem::path& path,
              const std::vector<std::vector<float>>& channels, int sample_rate);
void WriteWav(const std::filesystem::path& path, const Waveform& wave);

// Band-limited (windowed-sinc) sample-rate conversion. Output length is
// round(n * to_rate / from_rate).
std::vector<float> Resample(const std::vector<float>& samples, int from_rate,
                            int to_rate);

// Loads a WAV as mono at `target_rate`: channels are averaged, the signal is
// resampled, and it is peak-normalized only if its peak exceeds 1.
// Zero-length audio raises ValidationError.
Waveform LoadWav(const std::filesystem::path& path,
                 int target_rate = kDefaultSampleRate);

}  // namespace ctts

#endif  // CTTS_AUDIO_WAV_H_
