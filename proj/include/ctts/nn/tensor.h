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

#ifndef CTTS_NN_TENSOR_H_
#define CTTS_NN_TENSOR_H_

#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

namespace ctts {
namespace nn {

using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using RowVector = Eigen::Matrix<double, 1, Eigen::Dynamic>;

// Ordered collection of named 2-D tensors.
class ParameterSet {
 public:
  int Add(const std::string& name, Matrix value);
  bool Contains(const std::string& name) const { return index_.count(name) > 0; }
  // Throws ValidationError for unknown names.
  int Index(const std::string& name) const;

  Matrix& operator[](int i) { return values_[i]; }
  const Matrix& operator[](int i) const { return values_[i]; }
  Matrix& Get(const std::string& name) { return values_[Index(name)]; }
  const Matrix& Get(const std::string& name) const { return values_[Index(name)]; }
  const std::string& Name(int i) const { return names_[i]; }
  int size() const { return static_cast<int>(values_.size()); }
  size_t NumElements() const;

  std::vector<Matrix> ZerosLike() const;
  bool AllFinite() const;
  bool operator==(const ParameterSet& other) const;

 private:
  std::vector<std::string> names_;
  std::vector<Matrix> values_;
  std::unordered_map<std::string, int> index_;
};

// Key-side masking for attention: keys at or beyond `key_length` are hidden,
// and with `causal` query i only sees keys j <= i.
struct AttentionMask {
  int key_length = -1;  // -1: all keys visible
  bool causal = false;
};

namespace kernels {

// Row-wise layer normalization. Optionally returns the normalized rows and
// per-row inverse standard deviations for the backward pass.
Matrix LayerNorm(const Matrix& x, const RowVector& gamma, const RowVector& beta,
                 double eps, Matrix* xhat = nullptr,
                 std::vector<double>* inv_std = nullptr);

// Scaled dot-product attention over `heads` column blocks of q/k/v.
// `probs`, when given, receives one (rows(q) x rows(k)) matrix per head.
Matrix Attention(const Matrix& q, const Matrix& k, const Matrix& v, int heads,
                 const AttentionMask& mask, std::vector<Matrix>* probs = nullptr);

// Sinusoidal position encodings for positions [start, start + rows).
Matrix SinusoidalPositions(int start, int rows, int dim);

}  // namespace kernels

}  // namespace nn
}  // namespace ctts

#endif  // CTTS_NN_TENSOR_H_
