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

#ifndef CTTS_TRAIN_OPTIMIZER_H_
#define CTTS_TRAIN_OPTIMIZER_H_

#include <cstdint>
#include <vector>

#include "ctts/nn/tensor.h"
#include "ctts/train/spec.h"

namespace ctts {

// First and second moment estimates, one pair per parameter tensor.
struct AdamState {
  int64_t t = 0;
  std::vector<nn::Matrix> m;
  std::vector<nn::Matrix> v;

  bool empty() const { return m.empty(); }
  bool operator==(const AdamState& other) const;
};

AdamState InitAdam(const nn::ParameterSet& params);

// Linear warmup to the peak, then peak * sqrt(warmup / step). `step` is
// zero-based; warmup 0 gives a constant rate.
double LearningRate(const Hyperparams& h, int64_t step);

// Global L2 norm over the gradients whose mask entry is set.
double GlobalNorm(const std::vector<nn::Matrix>& grads, const std::vector<bool>& mask);

// Scales masked gradients so their global norm is at most `max_norm`.
// Returns the norm before clipping.
double ClipGradients(std::vector<nn::Matrix>* grads, const std::vector<bool>& mask,
                     double max_norm);

// One bias-corrected Adam update of the masked tensors. Unmasked tensors and
// their moments are left untouched.
void AdamUpdate(nn::ParameterSet* params, AdamState* state,
                const std::vector<nn::Matrix>& grads, const std::vector<bool>& mask,
                const Hyperparams& h, double learning_rate);

}  // namespace ctts

#endif  // CTTS_TRAIN_OPTIMIZER_H_
