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

#include "ctts/nn/tensor.h"

#include <cmath>
#include <cstring>
#include <limits>

#include "ctts/common/error.h"

namespace ctts {
namespace nn {

int ParameterSet::Add(const std::string& name, Matrix value) {
  if (!index_.emplace(name, static_cast<int>(values_.size())).second) {
    throw ValidationError("duplicate parameter " + name);
  }
  names_.push_back(name);
  values_.push_back(std::move(value));
  return static_cast<int>(values_.size()) - 1;
}

int ParameterSet::Index(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw ValidationError("unknown parameter " + name);
  return it->second;
}

size_t ParameterSet::NumElements() const {
  size_t n = 0;
  for (const auto& v : values_) n += static_cast<size_t>(v.size());
  return n;
}

std::vector<Matrix> ParameterSet::ZerosLike() const {
  std::vector<Matrix> out;
  out.reserve(values_.size());
  for (const auto& v : values_) out.push_back(Matrix::Zero(v.rows(), v.cols()));
  return out;
}

bool ParameterSet::AllFinite() const {
  for (const auto& v : values_) {
    if (!v.allFinite()) return false;
  }
  return true;
}

bool ParameterSet::operator==(const ParameterSet& other) const {
  if (names_ != other.names_) return false;
  for (size_t i = 0; i < values_.size(); ++i) {
    const auto& a = values_[i];
    const auto& b = other.values_[i];
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    if (a.size() > 0 &&
        std::memcmp(a.data(), b.data(), sizeof(double) * static_cast<size_t>(a.size())) != 0) {
      return false;
    }
  }
  return true;
}

namespace kernels {

Matrix LayerNorm(const Matrix& x, const RowVector& gamma, const RowVector& beta,
                 double eps, Matrix* xhat, std::vector<double>* inv_std) {
  const Eigen::Index n = x.cols();
  Matrix normed(x.rows(), n);
  if (inv_std) inv_std->resize(x.rows());
  for (Eigen::Index r = 0; r < x.rows(); ++r) {
    double mean = x.row(r).mean();
    double var = (x.row(r).array() - mean).square().sum() / static_cast<double>(n);
    double is = 1.0 / std::sqrt(var + eps);
    normed.row(r) = (x.row(r).array() - mean) * is;
    if (inv_std) (*inv_std)[r] = is;
  }
  Matrix out = (normed.array().rowwise() * gamma.array()).rowwise() + beta.array();
  if (xhat) *xhat = std::move(normed);
  return out;
}

Matrix Attention(const Matrix& q, const Matrix& k, const Matrix& v, int heads,
                 const AttentionMask& mask, std::vector<Matrix>* probs) {
  const Eigen::Index tq = q.rows(), tk = k.rows(), d = q.cols();
  const Eigen::Index dh = d / heads;
  const double scale = 1.0 / std::sqrt(static_cast<double>(dh));
  const Eigen::Index key_len = mask.key_length < 0 ? tk : mask.key_length;
  Matrix out = Matrix::Zero(tq, v.cols());
  if (probs) probs->assign(heads, Matrix());
  for (int h = 0; h < heads; ++h) {
    Matrix scores = q.middleCols(h * dh, dh) * k.middleCols(h * dh, dh).transpose() * scale;
    for (Eigen::Index i = 0; i < tq; ++i) {
      Eigen::Index visible = key_len;
      if (mask.causal) visible = std::min<Eigen::Index>(visible, i + 1);
      if (visible <= 0) {
        scores.row(i).setZero();
        continue;
      }
      double mx = scores.row(i).head(visible).maxCoeff();
      double sum = 0.0;
      for (Eigen::Index j = 0; j < tk; ++j) {
        double e = j < visible ? std::exp(scores(i, j) - mx) : 0.0;
        scores(i, j) = e;
        sum += e;
      }
      scores.row(i) /= sum;
    }
    out.middleCols(h * dh, dh) = scores * v.middleCols(h * dh, dh);
    if (probs) (*probs)[h] = std::move(scores);
  }
  return out;
}

Matrix SinusoidalPositions(int start, int rows, int dim) {
  Matrix pe(rows, dim);
  for (int r = 0; r < rows; ++r) {
    const double pos = start + r;
    for (int i = 0; i < dim; i += 2) {
      double freq = std::pow(10000.0, -static_cast<double>(i) / dim);
      pe(r, i) = std::sin(pos * freq);
      if (i + 1 < dim) pe(r, i + 1) = std::cos(pos * freq);
    }
  }
  return pe;
}

}  // namespace kernels

}  // namespace nn
}  // namespace ctts
