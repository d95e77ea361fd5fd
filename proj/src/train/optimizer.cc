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

#include "ctts/train/optimizer.h"

#include <algorithm>
#include <cmath>
#include <cstring>

namespace ctts {

namespace {

bool SameBits(const std::vector<nn::Matrix>& a, const std::vector<nn::Matrix>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].rows() != b[i].rows() || a[i].cols() != b[i].cols()) return false;
    if (std::memcmp(a[i].data(), b[i].data(), sizeof(double) * a[i].size()) != 0) return false;
  }
  return true;
}

}  // namespace

bool AdamState::operator==(const AdamState& other) const {
  return t == other.t && SameBits(m, other.m) && SameBits(v, other.v);
}

AdamState InitAdam(const nn::ParameterSet& params) {
  AdamState s;
  s.m = params.ZerosLike();
  s.v = params.ZerosLike();
  return s;
}

double LearningRate(const Hyperparams& h, int64_t step) {
  if (h.warmup_steps <= 0) return h.learning_rate;
  const double s = static_cast<double>(step + 1);
  const double w = static_cast<double>(h.warmup_steps);
  return h.learning_rate * std::min(s / w, std::sqrt(w / s));
}

double GlobalNorm(const std::vector<nn::Matrix>& grads, const std::vector<bool>& mask) {
  double sum = 0.0;
  for (size_t i = 0; i < grads.size(); ++i) {
    if (mask[i]) sum += grads[i].squaredNorm();
  }
  return std::sqrt(sum);
}

double ClipGradients(std::vector<nn::Matrix>* grads, const std::vector<bool>& mask,
                     double max_norm) {
  const double norm = GlobalNorm(*grads, mask);
  if (max_norm > 0.0 && norm > max_norm) {
    const double scale = max_norm / norm;
    for (size_t i = 0; i < grads->size(); ++i) {
      if (mask[i]) (*grads)[i] *= scale;
    }
  }
  return norm;
}

void AdamUpdate(nn::ParameterSet* params, AdamState* state,
                const std::vector<nn::Matrix>& grads, const std::vector<bool>& mask,
                const Hyperparams& h, double learning_rate) {
  state->t += 1;
  const double b1 = h.adam_beta1;
  const double b2 = h.adam_beta2;
  const double c1 = 1.0 - std::pow(b1, static_cast<double>(state->t));
  const double c2 = 1.0 - std::pow(b2, static_cast<double>(state->t));
  for (int i = 0; i < params->size(); ++i) {
    if (!mask[i]) continue;
    nn::Matrix& m = state->m[i];
    nn::Matrix& v = state->v[i];
    const nn::Matrix& g = grads[i];
    m = b1 * m + (1.0 - b1) * g;
    v = b2 * v + (1.0 - b2) * g.cwiseProduct(g);
    (*params)[i].array() -=
        learning_rate * (m.array() / c1) / ((v.array() / c2).sqrt() + h.adam_eps);
  }
}

}  // namespace ctts
