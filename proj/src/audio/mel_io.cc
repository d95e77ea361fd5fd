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

#include "ctts/audio/mel_io.h"

#include <bit>
#include <cstdint>
#include <cstring>

#include "ctts/common/error.h"
#include "ctts/common/file_util.h"

namespace ctts {

namespace {

static_assert(std::endian::native == std::endian::little,
              "mel I/O assumes a little-endian host");

constexpr size_t kHeaderBytes = 20;

template <typename T>
void Put(std::string* out, T v) {
  char buf[sizeof(T)];
  std::memcpy(buf, &v, sizeof(T));
  out->append(buf, sizeof(T));
}

template <typename T>
T Get(const std::string& in, size_t off) {
  T v;
  std::memcpy(&v, in.data() + off, sizeof(T));
  return v;
}

}  // namespace

std::string EncodeMel(const MelSpectrogram& mel) {
  std::string out;
  const size_t cells = static_cast<size_t>(mel.frames.size());
  out.reserve(kHeaderBytes + cells * 4);
  out += "MEL1";
  Put<uint32_t>(&out, static_cast<uint32_t>(mel.n_mels()));
  Put<uint32_t>(&out, static_cast<uint32_t>(mel.n_frames()));
  Put<float>(&out, static_cast<float>(mel.config.sample_rate));
  Put<uint32_t>(&out, static_cast<uint32_t>(mel.config.hop_length));
  out.append(reinterpret_cast<const char*>(mel.frames.data()), cells * sizeof(float));
  return out;
}

MelSpectrogram DecodeMel(const std::string& bytes) {
  if (bytes.size() < kHeaderBytes) throw FormatError("mel: truncated header");
  if (bytes.compare(0, 4, "MEL1") != 0) throw FormatError("mel: bad magic");
  const uint32_t n_mels = Get<uint32_t>(bytes, 4);
  const uint32_t n_frames = Get<uint32_t>(bytes, 8);
  const float sample_rate = Get<float>(bytes, 12);
  const uint32_t hop = Get<uint32_t>(bytes, 16);
  if (n_mels == 0 || n_frames == 0) throw FormatError("mel: empty dimensions");
  const uint64_t payload = static_cast<uint64_t>(n_mels) * n_frames * sizeof(float);
  if (bytes.size() - kHeaderBytes != payload) {
    throw FormatError("mel: header declares " + std::to_string(n_frames) + "x" +
                      std::to_string(n_mels) + " frames but payload has " +
                      std::to_string(bytes.size() - kHeaderBytes) + " bytes");
  }
  MelSpectrogram mel;
  mel.config.n_mels = static_cast<int>(n_mels);
  mel.config.sample_rate = static_cast<int>(sample_rate);
  mel.config.hop_length = static_cast<int>(hop);
  mel.frames.resize(n_frames, n_mels);
  std::memcpy(mel.frames.data(), bytes.data() + kHeaderBytes, payload);
  return mel;
}

void WriteMel(const MelSpectrogram& mel, const std::filesystem::path& path) {
  WriteFileAtomic(path, EncodeMel(mel));
}

MelSpectrogram ReadMel(const std::filesystem::path& path) {
  return DecodeMel(ReadFileToString(path));
}

}  // namespace ctts
