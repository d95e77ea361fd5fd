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

#include "ctts/audio/griffin_lim.h"

#include <cmath>
#include <numbers>

#include "ctts/common/error.h"
#include "ctts/common/random.h"

namespace ctts {

RealMatrix MelToMagnitude(const MelSpectrogram& mel) {
  const MelConfig& cfg = mel.config;
  cfg.Validate();
  if (mel.n_mels() != cfg.n_mels) {
    throw ConfigError("griffin_lim: mel has " + std::to_string(mel.n_mels()) +
                      " bins, config says " + std::to_string(cfg.n_mels));
  }
  RealMatrix fb = MelFilterbank(cfg);
  RealMatrix pinv = fb.completeOrthogonalDecomposition().pseudoInverse();
  RealMatrix energy = mel.frames.cast<double>().array().exp().matrix();
  RealMatrix linear = (energy * pinv.transpose()).cwiseMax(0.0);
  if (cfg.power == 2.0) linear = linear.cwiseSqrt();
  return linear;
}

double SpectralConvergence(const std::vector<float>& signal, const RealMatrix& target,
                           const MelConfig& cfg) {
  ComplexMatrix spec = Stft(signal, cfg);
  const Eigen::Index rows = std::min(spec.rows(), target.rows());
  double num = 0.0, den = 0.0;
  for (Eigen::Index t = 0; t < rows; ++t) {
    for (Eigen::Index k = 0; k < target.cols(); ++k) {
      double d = std::abs(spec(t, k)) - target(t, k);
      num += d * d;
      den += target(t, k) * target(t, k);
    }
  }
  return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

std::vector<float> GriffinLimFromMagnitude(const RealMatrix& magnitude,
                                           const MelConfig& cfg, int n_iters,
                                           uint64_t seed) {
  if (n_iters < 1) throw ConfigError("griffin_lim: n_iters must be >= 1");
  if (magnitude.rows() < 1 || magnitude.cols() != cfg.n_bins()) {
    throw ConfigError("griffin_lim: magnitude shape does not match config");
  }
  Rng rng(seed);
  ComplexMatrix spec(magnitude.rows(), magnitude.cols());
  for (Eigen::Index t = 0; t < spec.rows(); ++t) {
    for (Eigen::Index k = 0; k < spec.cols(); ++k) {
      spec(t, k) = std::polar(magnitude(t, k), 2.0 * std::numbers::pi * rng.UniformDouble());
    }
  }
  std::vector<float> signal = Istft(spec, cfg);
  for (int it = 1; it < n_iters; ++it) {
    if (signal.empty()) break;
    ComplexMatrix rebuilt = Stft(signal, cfg);
    for (Eigen::Index t = 0; t < spec.rows(); ++t) {
      for (Eigen::Index k = 0; k < spec.cols(); ++k) {
        std::complex<double> z = t < rebuilt.rows() ? rebuilt(t, k) : 0.0;
        double a = std::abs(z);
        spec(t, k) = a > 1e-12 ? magnitude(t, k) * (z / a)
                               : std::complex<double>(magnitude(t, k), 0.0);
      }
    }
    signal = Istft(spec, cfg);
  }
  return signal;
}

Waveform GriffinLim(const MelSpectrogram& mel, int n_iters, uint64_t seed) {
  Waveform out;
  out.sample_rate = mel.config.sample_rate;
  out.samples = GriffinLimFromMagnitude(MelToMagnitude(mel), mel.config, n_iters, seed);
  float peak = 0.0f;
  for (float v : out.samples) peak = std::max(peak, std::abs(v));
  if (peak > 1.0f) {
    for (float& v : out.samples) v /= peak;
  }
  return out;
}

}  // namespace ctts
