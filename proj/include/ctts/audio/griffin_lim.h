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

#ifndef CTTS_AUDIO_GRIFFIN_LIM_H_
#define CTTS_AUDIO_GRIFFIN_LIM_H_

#include <cstdint>
#include <vector>

#include "ctts/audio/mel.h"

namespace ctts {

// Approximate linear magnitude spectrogram (n_frames x n_bins) from a log-mel
// spectrogram via the filterbank pseudo-inverse, clamped at zero.
RealMatrix MelToMagnitude(const MelSpectrogram& mel);

// || |STFT(signal)| - target ||_F / ||target||_F.
double SpectralConvergence(const std::vector<float>& signal, const RealMatrix& target,
                           const MelConfig& cfg);

// Phase recovery by alternating projections. Initial phases are drawn from a
// fixed-seed stream so the result is deterministic.
std::vector<float> GriffinLimFromMagnitude(const RealMatrix& magnitude,
                                           const MelConfig& cfg, int n_iters,
                                           uint64_t seed = 0);

Waveform GriffinLim(const MelSpectrogram& mel, int n_iters, uint64_t seed = 0);

}  // namespace ctts

#endif  // CTTS_AUDIO_GRIFFIN_LIM_H_
