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

#ifndef CTTS_AUDIO_MEL_H_
#define CTTS_AUDIO_MEL_H_

#include <complex>
#include <filesystem>
#include <vector>

#include <Eigen/Dense>

#include "ctts/audio/wav.h"
#include "json.hpp"

namespace ctts {

using MelMatrix = Eigen::Matrix<float, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using RealMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ComplexMatrix =
    Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Defaults follow the 22.05 kHz / 80-bin recipe used by common LJSpeech
// vocoders.
struct MelConfig {
  int sample_rate = kDefaultSampleRate;
  int n_fft = 1024;
  int win_length = 1024;
  int hop_length = 256;
  int n_mels = 80;
  double fmin = 0.0;
  double fmax = 8000.0;
  double log_floor = 1e-5;
  // 2 = power spectrum, 1 = magnitude spectrum before the filterbank.
  double power = 2.0;

  // Throws ConfigError unless hop <= win <= n_fft, fmin < fmax <= sr/2 and
  // log_floor > 0.
  void Validate() const;
  int n_bins() const { return n_fft / 2 + 1; }
  bool operator==(const MelConfig&) const = default;
};

void to_json(nlohmann::json& j, const MelConfig& c);
// Missing keys keep defaults; unknown keys raise ConfigError.
void from_json(const nlohmann::json& j, MelConfig& c);

// n_frames x n_mels natural-log mel energies.
struct MelSpectrogram {
  MelMatrix frames;
  MelConfig config;

  int n_frames() const { return static_cast<int>(frames.rows()); }
  int n_mels() const { return static_cast<int>(frames.cols()); }
};

// Slaney-style mel scale (linear below 1 kHz, logarithmic above).
double HzToMel(double hz);
double MelToHz(double mel);

// n_mels x (n_fft/2 + 1) triangular filters, area-normalized.
RealMatrix MelFilterbank(const MelConfig& cfg);

// Periodic Hann window of `win_length`, zero-padded and centered to n_fft.
std::vector<double> AnalysisWindow(const MelConfig& cfg);

// Center-padded (reflect) STFT; rows are frames, 1 + floor(len / hop) of them.
ComplexMatrix Stft(const std::vector<float>& samples, const MelConfig& cfg);

// Least-squares inverse of Stft; returns (n_frames - 1) * hop samples.
std::vector<float> Istft(const ComplexMatrix& spec, const MelConfig& cfg);

// Log-mel spectrogram target extraction.
MelSpectrogram ComputeMelSpectrogram(const Waveform& wave, const MelConfig& cfg);

}  // namespace ctts

#endif  // CTTS_AUDIO_MEL_H_
