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

#ifndef CTTS_MODEL_LOSS_H_
#define CTTS_MODEL_LOSS_H_

#include <vector>

#include "ctts/nn/tensor.h"

namespace ctts {

struct LossBreakdown {
  double mel_mse = 0.0;
  double stop_bce = 0.0;
  double total = 0.0;
};

inline constexpr double kDefaultStopWeight = 5.0;

// Stop targets for `frames` steps of which the first `valid` are real:
// zero before the final valid frame, one from it onward.
std::vector<double> StopTargets(int frames, int valid);

// mel_mse = SSE(pre) / cells + SSE(post) / cells over the first
// `valid_frames` rows (-1: all rows); `post` may be null for a single head.
// stop_bce is the mean BCE over the same rows. Shape mismatches raise
// ConfigError; stop targets that are not 0/1 with a single trailing run of
// ones raise ValidationError.
LossBreakdown ComputeLoss(const nn::Matrix& pre, const nn::Matrix* post,
                          const nn::Matrix& target, const std::vector<double>& stop_logits,
                          const std::vector<double>& stop_targets, double stop_weight,
                          int valid_frames = -1);

}  // namespace ctts

#endif  // CTTS_MODEL_LOSS_H_
