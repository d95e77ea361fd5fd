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

#include "ctts/audio/wav.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <numbers>

#include "ctts/common/error.h"
#include "ctts/common/file_util.h"

namespace ctts {

namespace {

uint32_t ReadU32(const std::string& b, size_t off) {
  uint32_t v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 8) | static_cast<unsigned char>(b[off + i]);
  return v;
}

uint16_t ReadU16(const std::string& b, size_t off) {
  return static_cast<uint16_t>(static_cast<unsigned char>(b[off]) |
                               (static_cast<unsigned char>(b[off + 1]) << 8));
}

void PutU32(std::string* b, uint32_t v) {
  for (int i = 0; i < 4; ++i) b->push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void PutU16(std::string* b, uint16_t v) {
  b->push_back(static_cast<char>(v & 0xff));
  b->push_back(static_cast<char>(v >> 8));
}

}  // namespace

WavData ReadWav(const std::filesystem::path& path) {
  const std::string bytes = ReadFileToString(path);
  const std::string name = path.string();
  if (bytes.size() < 12 || bytes.compare(0, 4, "RIFF") != 0 ||
      bytes.compare(8, 4, "WAVE") != 0) {
    throw IoError(name + ": not a RIFF/WAVE file");
  }
  uint16_t format = 0, channels = 0, bits = 0;
  uint32_t rate = 0;
  bool have_fmt = false;
  size_t data_off = 0, data_len = 0;
  bool have_data = false;
  size_t off = 12;
  while (off + 8 <= bytes.size()) {
    std::string id = bytes.substr(off, 4);
    uint32_t len = ReadU32(bytes, off + 4);
    size_t body = off + 8;
    if (id == "fmt ") {
      if (len < 16 || body + 16 > bytes.size()) throw IoError(name + ": short fmt chunk");
      format = ReadU16(bytes, body);
      channels = ReadU16(bytes, body + 2);
      rate = ReadU32(bytes, body + 4);
      bits = ReadU16(bytes, body + 14);
      if (format == 0xFFFE && len >= 26) format = ReadU16(bytes, body + 24);
      have_fmt = true;
    } else if (id == "data") {
      data_off = body;
      data_len = std::min<size_t>(len, bytes.size() - body);
      have_data = true;
      break;
    }
    off = body + len + (len & 1);
  }
  if (!have_fmt || !have_data) throw IoError(name + ": missing fmt or data chunk");
  if (channels == 0 || rate == 0) throw IoError(name + ": invalid fmt chunk");
  bool pcm16 = format == 1 && bits == 16;
  bool float32 = format == 3 && bits == 32;
  if (!pcm16 && !float32) {
    throw IoError(name + ": unsupported WAV encoding (format " + std::to_string(format) +
                  ", " + std::to_string(bits) + " bits)");
  }
  size_t frame_bytes = static_cast<size_t>(channels) * bits / 8;
  size_t n = data_len / frame_bytes;
  WavData wav;
  wav.sample_rate = static_cast<int>(rate);
  wav.channels.assign(channels, std::vector<float>(n));
  for (size_t i = 0; i < n; ++i) {
    for (uint16_t c = 0; c < channels; ++c) {
      size_t p = data_off + i * frame_bytes + c * (bits / 8);
      float v;
      if (pcm16) {
        v = static_cast<int16_t>(ReadU16(bytes, p)) / 32768.0f;
      } else {
        uint32_t u = ReadU32(bytes, p);
        std::memcpy(&v, &u, sizeof(v));
      }
      wav.channels[c][i] = v;
    }
  }
  return wav;
}

void WriteWav(const std::filesystem::path& path,
              const std::vector<std::vector<float>>& channels, int sample_rate) {
  if (channels.empty()) throw ValidationError("WriteWav: no channels");
  size_t n = channels[0].size();
  for (const auto& ch : channels) {
    if (ch.size() != n) throw ValidationError("WriteWav: ragged channels");
  }
  uint16_t nch = static_cast<uint16_t>(channels.size());
  uint32_t data_len = static_cast<uint32_t>(n * nch * 2);
  std::string b;
  b.reserve(44 + data_len);
  b += "RIFF";
  PutU32(&b, 36 + data_len);
  b += "WAVEfmt ";
  PutU32(&b, 16);
  PutU16(&b, 1);
  PutU16(&b, nch);
  PutU32(&b, static_cast<uint32_t>(sample_rate));
  PutU32(&b, static_cast<uint32_t>(sample_rate) * nch * 2);
  PutU16(&b, static_cast<uint16_t>(nch * 2));
  PutU16(&b, 16);
  b += "data";
  PutU32(&b, data_len);
  for (size_t i = 0; i < n; ++i) {
    for (const auto& ch : channels) {
      const long q = std::clamp(std::lround(ch[i] * 32768.0f), -32768L, 32767L);
      PutU16(&b, static_cast<uint16_t>(static_cast<int16_t>(q)));
    }
  }
  WriteFileAtomic(path, b);
}

void WriteWav(const std::filesystem::path& path, const Waveform& wave) {
  WriteWav(path, {wave.samples}, wave.sample_rate);
}

std::vector<float> Resample(const std::vector<float>& samples, int from_rate,
                            int to_rate) {
  if (from_rate <= 0 || to_rate <= 0) throw ConfigError("Resample: rates must be positive");
  if (from_rate == to_rate) return samples;
  const double ratio = static_cast<double>(to_rate) / from_rate;
  const size_t out_len = static_cast<size_t>(
      (static_cast<uint64_t>(samples.size()) * to_rate + from_rate / 2) / from_rate);
  const double cutoff = std::min(1.0, ratio) * 0.97;
  const int zero_crossings = 16;
  const double half_width = zero_crossings / cutoff;
  const long n_in = static_cast<long>(samples.size());
  std::vector<float> out(out_len);
  for (size_t i = 0; i < out_len; ++i) {
    double t = i / ratio;
    long lo = std::max(0L, static_cast<long>(std::ceil(t - half_width)));
    long hi = std::min(n_in - 1, static_cast<long>(std::floor(t + half_width)));
    double acc = 0.0;
    for (long k = lo; k <= hi; ++k) {
      double x = t - k;
      double arg = cutoff * x;
      double sinc = std::abs(arg) < 1e-12
                        ? 1.0
                        : std::sin(std::numbers::pi * arg) / (std::numbers::pi * arg);
      double window = 0.5 + 0.5 * std::cos(std::numbers::pi * x / half_width);
      acc += samples[k] * cutoff * sinc * window;
    }
    out[i] = static_cast<float>(acc);
  }
  return out;
}

Waveform LoadWav(const std::filesystem::path& path, int target_rate) {
  WavData wav = ReadWav(path);
  size_t n = wav.channels[0].size();
  if (n == 0) throw ValidationError(path.string() + ": zero-length audio");
  std::vector<float> mono(n, 0.0f);
  const float inv = 1.0f / static_cast<float>(wav.channels.size());
  for (size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (const auto& ch : wav.channels) acc += ch[i];
    mono[i] = static_cast<float>(acc) * inv;
  }
  Waveform out;
  out.sample_rate = target_rate;
  out.samples = Resample(mono, wav.sample_rate, target_rate);
  if (out.samples.empty()) throw ValidationError(path.string() + ": zero-length audio");
  float peak = 0.0f;
  for (float v : out.samples) {
    if (!std::isfinite(v)) throw ValidationError(path.string() + ": non-finite sample");
    peak = std::max(peak, std::abs(v));
  }
  if (peak > 1.0f) {
    for (float& v : out.samples) v /= peak;
  }
  return out;
}

}  // namespace ctts
