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

#include "ctts/audio/mel.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <unsupported/Eigen/FFT>

#include "ctts/common/error.h"
#include "ctts/common/json_util.h"

namespace ctts {

namespace {

constexpr double kMinLogHz = 1000.0;
constexpr double kLinearStep = 200.0 / 3.0;
constexpr double kMinLogMel = kMinLogHz / kLinearStep;
const double kLogStep = std::log(6.4) / 27.0;

// Mirror index into [0, n) the way numpy's reflect padding does.
long ReflectIndex(long i, long n) {
  if (n == 1) return 0;
  long period = 2 * (n - 1);
  i %= period;
  if (i < 0) i += period;
  return i < n ? i : period - i;
}

}  // namespace

void MelConfig::Validate() const {
  if (sample_rate <= 0 || n_fft <= 0 || win_length <= 0 || hop_length <= 0 ||
      n_mels <= 0) {
    throw ConfigError("mel: sizes must be positive");
  }
  if (!(hop_length <= win_length && win_length <= n_fft)) {
    throw ConfigError("mel: require hop_length <= win_length <= n_fft");
  }
  if (!(fmin >= 0.0 && fmin < fmax && fmax <= sample_rate / 2.0)) {
    throw ConfigError("mel: require 0 <= fmin < fmax <= sample_rate/2");
  }
  if (!(log_floor > 0.0)) throw ConfigError("mel: log_floor must be > 0");
  if (power != 1.0 && power != 2.0) throw ConfigError("mel: power must be 1 or 2");
}

void to_json(nlohmann::json& j, const MelConfig& c) {
  j = {{"sample_rate", c.sample_rate}, {"n_fft", c.n_fft},       {"win_length", c.win_length},
       {"hop_length", c.hop_length},   {"n_mels", c.n_mels},     {"fmin", c.fmin},
       {"fmax", c.fmax},               {"log_floor", c.log_floor}, {"power", c.power}};
}

void from_json(const nlohmann::json& j, MelConfig& c) {
  const std::string s = "mel";
  RejectUnknownKeys(j, {"sample_rate", "n_fft", "win_length", "hop_length", "n_mels", "fmin",
                        "fmax", "log_floor", "power"},
                    s);
  ReadOptional(j, "sample_rate", s, &c.sample_rate);
  ReadOptional(j, "n_fft", s, &c.n_fft);
  ReadOptional(j, "win_length", s, &c.win_length);
  ReadOptional(j, "hop_length", s, &c.hop_length);
  ReadOptional(j, "n_mels", s, &c.n_mels);
  ReadOptional(j, "fmin", s, &c.fmin);
  ReadOptional(j, "fmax", s, &c.fmax);
  ReadOptional(j, "log_floor", s, &c.log_floor);
  ReadOptional(j, "power", s, &c.power);
}

double HzToMel(double hz) {
  if (hz < kMinLogHz) return hz / kLinearStep;
  return kMinLogMel + std::log(hz / kMinLogHz) / kLogStep;
}

double MelToHz(double mel) {
  if (mel < kMinLogMel) return mel * kLinearStep;
  return kMinLogHz * std::exp(kLogStep * (mel - kMinLogMel));
}

RealMatrix MelFilterbank(const MelConfig& cfg) {
  const int n_bins = cfg.n_bins();
  std::vector<double> fft_freqs(n_bins);
  for (int k = 0; k < n_bins; ++k) {
    fft_freqs[k] = static_cast<double>(k) * cfg.sample_rate / cfg.n_fft;
  }
  const double mel_lo = HzToMel(cfg.fmin);
  const double mel_hi = HzToMel(cfg.fmax);
  std::vector<double> edges(cfg.n_mels + 2);
  for (int i = 0; i < cfg.n_mels + 2; ++i) {
    edges[i] = MelToHz(mel_lo + (mel_hi - mel_lo) * i / (cfg.n_mels + 1));
  }
  RealMatrix fb = RealMatrix::Zero(cfg.n_mels, n_bins);
  for (int m = 0; m < cfg.n_mels; ++m) {
    const double left = edges[m], center = edges[m + 1], right = edges[m + 2];
    const double norm = 2.0 / (right - left);
    for (int k = 0; k < n_bins; ++k) {
      double lower = (fft_freqs[k] - left) / (center - left);
      double upper = (right - fft_freqs[k]) / (right - center);
      fb(m, k) = std::max(0.0, std::min(lower, upper)) * norm;
    }
  }
  return fb;
}

std::vector<double> AnalysisWindow(const MelConfig& cfg) {
  std::vector<double> window(cfg.n_fft, 0.0);
  const int offset = (cfg.n_fft - cfg.win_length) / 2;
  for (int i = 0; i < cfg.win_length; ++i) {
    window[offset + i] =
        0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * i / cfg.win_length);
  }
  return window;
}

ComplexMatrix Stft(const std::vector<float>& samples, const MelConfig& cfg) {
  if (samples.empty()) throw ValidationError("stft: empty signal");
  const long n = static_cast<long>(samples.size());
  const long pad = cfg.n_fft / 2;
  const int n_frames = 1 + static_cast<int>(n / cfg.hop_length);
  const auto window = AnalysisWindow(cfg);
  ComplexMatrix out(n_frames, cfg.n_bins());
  Eigen::FFT<double> fft;
  fft.SetFlag(Eigen::FFT<double>::HalfSpectrum);
  std::vector<double> frame(cfg.n_fft);
  std::vector<std::complex<double>> spec;
  for (int t = 0; t < n_frames; ++t) {
    long start = static_cast<long>(t) * cfg.hop_length - pad;
    for (int i = 0; i < cfg.n_fft; ++i) {
      frame[i] = samples[ReflectIndex(start + i, n)] * window[i];
    }
    fft.fwd(spec, frame);
    for (int k = 0; k < cfg.n_bins(); ++k) out(t, k) = spec[k];
  }
  return out;
}

std::vector<float> Istft(const ComplexMatrix& spec, const MelConfig& cfg) {
  const int n_frames = static_cast<int>(spec.rows());
  if (n_frames < 1 || spec.cols() != cfg.n_bins()) {
    throw ConfigError("istft: spectrum shape does not match config");
  }
  const auto window = AnalysisWindow(cfg);
  const long total = static_cast<long>(n_frames - 1) * cfg.hop_length + cfg.n_fft;
  std::vector<double> signal(total, 0.0), norm(total, 0.0);
  Eigen::FFT<double> fft;
  fft.SetFlag(Eigen::FFT<double>::HalfSpectrum);
  std::vector<std::complex<double>> half(cfg.n_bins());
  std::vector<double> frame;
  for (int t = 0; t < n_frames; ++t) {
    for (int k = 0; k < cfg.n_bins(); ++k) half[k] = spec(t, k);
    fft.inv(frame, half, cfg.n_fft);
    long start = static_cast<long>(t) * cfg.hop_length;
    for (int i = 0; i < cfg.n_fft; ++i) {
      signal[start + i] += frame[i] * window[i];
      norm[start + i] += window[i] * window[i];
    }
  }
  const long pad = cfg.n_fft / 2;
  const long out_len = static_cast<long>(n_frames - 1) * cfg.hop_length;
  std::vector<float> out(out_len);
  for (long i = 0; i < out_len; ++i) {
    double w = norm[i + pad];
    out[i] = static_cast<float>(w > 1e-11 ? signal[i + pad] / w : signal[i + pad]);
  }
  return out;
}

MelSpectrogram ComputeMelSpectrogram(const Waveform& wave, const MelConfig& cfg) {
  cfg.Validate();
  if (wave.sample_rate != cfg.sample_rate) {
    throw ConfigError("mel: waveform rate " + std::to_string(wave.sample_rate) +
                      " != configured " + std::to_string(cfg.sample_rate));
  }
  ComplexMatrix spec = Stft(wave.samples, cfg);
  RealMatrix mag(spec.rows(), spec.cols());
  for (Eigen::Index t = 0; t < spec.rows(); ++t) {
    for (Eigen::Index k = 0; k < spec.cols(); ++k) {
      double p = std::norm(spec(t, k));
      mag(t, k) = cfg.power == 2.0 ? p : std::sqrt(p);
    }
  }
  RealMatrix mel = mag * MelFilterbank(cfg).transpose();
  MelSpectrogram out;
  out.config = cfg;
  out.frames = mel.unaryExpr([&](double v) {
                      return std::log(std::max(v, cfg.log_floor));
                    }).cast<float>();
  return out;
}

}  // namespace ctts
