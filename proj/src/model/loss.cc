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

#include "ctts/model/loss.h"

#include <cmath>
#include <string>

#include "ctts/common/error.h"
#include "ctts/nn/graph.h"

namespace ctts {

std::vector<double> StopTargets(int frames, int valid) {
  std::vector<double> out(frames, 0.0);
  for (int t = std::max(valid - 1, 0); t < frames; ++t) out[t] = 1.0;
  return out;
}

LossBreakdown ComputeLoss(const nn::Matrix& pre, const nn::Matrix* post,
                          const nn::Matrix& target, const std::vector<double>& stop_logits,
                          const std::vector<double>& stop_targets, double stop_weight,
                          int valid_frames) {
  auto shape = [](const nn::Matrix& m) {
    return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
  };
  if (pre.rows() != target.rows() || pre.cols() != target.cols()) {
    throw ConfigError("compute_loss: prediction " + shape(pre) + " vs target " + shape(target));
  }
  if (post != nullptr && (post->rows() != target.rows() || post->cols() != target.cols())) {
    throw ConfigError("compute_loss: postnet prediction " + shape(*post) + " vs target " +
                      shape(target));
  }
  const int frames = static_cast<int>(target.rows());
  if (static_cast<int>(stop_logits.size()) != frames ||
      static_cast<int>(stop_targets.size()) != frames) {
    throw ConfigError("compute_loss: stop vectors must have " + std::to_string(frames) +
                      " entries");
  }
  const int valid = valid_frames < 0 ? frames : valid_frames;
  if (valid < 1 || valid > frames) throw ConfigError("compute_loss: invalid frame count");
  for (int t = 0; t < valid; ++t) {
    const double s = stop_targets[t];
    if ((s != 0.0 && s != 1.0) || (t > 0 && s < stop_targets[t - 1])) {
      throw ValidationError("compute_loss: stop targets must be a zero run then a one run");
    }
  }

  const double cells = static_cast<double>(valid) * target.cols();
  LossBreakdown out;
  out.mel_mse = (pre.topRows(valid) - target.topRows(valid)).squaredNorm() / cells;
  if (post != nullptr) {
    out.mel_mse += (post->topRows(valid) - target.topRows(valid)).squaredNorm() / cells;
  }
  double bce = 0.0;
  for (int t = 0; t < valid; ++t) bce += nn::BceWithLogits(stop_logits[t], stop_targets[t]);
  out.stop_bce = bce / valid;
  out.total = out.mel_mse + stop_weight * out.stop_bce;
  return out;
}

}  // namespace ctts
