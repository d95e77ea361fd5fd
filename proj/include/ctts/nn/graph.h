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

#ifndef CTTS_NN_GRAPH_H_
#define CTTS_NN_GRAPH_H_

#include <functional>
#include <vector>

#include "ctts/nn/tensor.h"

namespace ctts {
namespace nn {

// Handle to a node in a Graph.
struct Var {
  int id = -1;
  bool valid() const { return id >= 0; }
};

// Reverse-mode automatic differentiation tape. Nodes are appended in
// evaluation order, so reverse creation order is a valid topological order
// for the backward sweep. Parameter leaves read from a ParameterSet that must
// outlive the graph.
class Graph {
 public:
  explicit Graph(const ParameterSet* params = nullptr) : params_(params) {}
  Graph(const Graph&) = delete;
  Graph& operator=(const Graph&) = delete;

  Var Constant(Matrix value);
  // One leaf per parameter index, created on first use.
  Var Param(int index);

  const Matrix& Value(Var v) const { return nodes_[v.id].value; }
  double Scalar(Var v) const { return nodes_[v.id].value(0, 0); }
  size_t size() const { return nodes_.size(); }

  Var MatMul(Var a, Var b);
  Var Add(Var a, Var b);
  // a + ones * row, where row is 1 x cols(a).
  Var AddRow(Var a, Var row);
  Var Scale(Var a, double s);
  // Element-wise product with a constant (dropout masks, row masks).
  Var MulConstant(Var a, const Matrix& c);
  Var Relu(Var a);
  Var Tanh(Var a);
  Var LayerNorm(Var x, Var gamma, Var beta, double eps);
  Var Attention(Var q, Var k, Var v, int heads, const AttentionMask& mask);
  Var GatherRows(Var table, const std::vector<int>& ids);
  Var ConcatRows(Var a, Var b);
  // Same-padded im2col for 1-D convolution along rows: row t of the result
  // is [x(t - p), ..., x(t + p)] flattened, p = (kernel - 1) / 2, with zeros
  // outside the sequence.
  Var Unfold(Var x, int kernel);
  // Sum of squared differences over the first `rows` rows (1 x 1).
  Var SquaredErrorSum(Var pred, const Matrix& target, int rows);
  // Sum of binary cross-entropy with logits over the first `rows` entries of
  // a column vector (1 x 1).
  Var BceWithLogitsSum(Var logits, const std::vector<double>& targets, int rows);

  // Back-propagates d(root)/d(node) from a 1 x 1 root and accumulates
  // parameter gradients into `param_grads` (sized like the ParameterSet).
  void Backward(Var root, std::vector<Matrix>* param_grads);

 private:
  using BackwardFn = std::function<void(Graph*, const Matrix& grad)>;

  struct Node {
    Matrix value;
    BackwardFn backward;
    int param_index = -1;
  };

  Var Push(Matrix value, BackwardFn backward = nullptr);
  void Accumulate(Var v, const Matrix& g);

  const ParameterSet* params_;
  std::vector<Node> nodes_;
  std::vector<int> param_nodes_;
  std::vector<Matrix> grads_;
  std::vector<bool> has_grad_;
};

// Stable binary cross-entropy for one logit; handles infinite logits.
double BceWithLogits(double logit, double target);

}  // namespace nn
}  // namespace ctts

#endif  // CTTS_NN_GRAPH_H_
