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

#include "ctts/nn/graph.h"

#include <cmath>
#include <limits>
#include <memory>

#include "ctts/common/error.h"

namespace ctts {
namespace nn {

namespace {

void CheckSameShape(const Matrix& a, const Matrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ValidationError(std::string(op) + ": shape mismatch " + std::to_string(a.rows()) +
                          "x" + std::to_string(a.cols()) + " vs " +
                          std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
}

double Sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  double e = std::exp(z);
  return e / (1.0 + e);
}

}  // namespace

double BceWithLogits(double logit, double target) {
  if (std::isinf(logit)) {
    bool positive = logit > 0;
    if (target == 1.0) return positive ? 0.0 : std::numeric_limits<double>::infinity();
    if (target == 0.0) return positive ? std::numeric_limits<double>::infinity() : 0.0;
    return std::numeric_limits<double>::infinity();
  }
  if (logit >= 0) return (1.0 - target) * logit + std::log1p(std::exp(-logit));
  return -target * logit + std::log1p(std::exp(logit));
}

Var Graph::Push(Matrix value, BackwardFn backward) {
  nodes_.push_back(Node{std::move(value), std::move(backward), -1});
  return Var{static_cast<int>(nodes_.size()) - 1};
}

void Graph::Accumulate(Var v, const Matrix& g) {
  if (!has_grad_[v.id]) {
    grads_[v.id] = g;
    has_grad_[v.id] = true;
  } else {
    grads_[v.id] += g;
  }
}

Var Graph::Constant(Matrix value) { return Push(std::move(value)); }

Var Graph::Param(int index) {
  if (params_ == nullptr || index < 0 || index >= params_->size()) {
    throw ValidationError("graph: invalid parameter index " + std::to_string(index));
  }
  if (param_nodes_.size() < static_cast<size_t>(params_->size())) {
    param_nodes_.resize(params_->size(), -1);
  }
  if (param_nodes_[index] >= 0) return Var{param_nodes_[index]};
  Var v = Push((*params_)[index]);
  nodes_[v.id].param_index = index;
  param_nodes_[index] = v.id;
  return v;
}

Var Graph::MatMul(Var a, Var b) {
  const Matrix& av = Value(a);
  const Matrix& bv = Value(b);
  if (av.cols() != bv.rows()) {
    throw ValidationError("matmul: inner dimensions " + std::to_string(av.cols()) +
                          " vs " + std::to_string(bv.rows()));
  }
  return Push(av * bv, [a, b](Graph* g, const Matrix& grad) {
    g->Accumulate(a, grad * g->Value(b).transpose());
    g->Accumulate(b, g->Value(a).transpose() * grad);
  });
}

Var Graph::Add(Var a, Var b) {
  CheckSameShape(Value(a), Value(b), "add");
  return Push(Value(a) + Value(b), [a, b](Graph* g, const Matrix& grad) {
    g->Accumulate(a, grad);
    g->Accumulate(b, grad);
  });
}

Var Graph::AddRow(Var a, Var row) {
  const Matrix& av = Value(a);
  const Matrix& rv = Value(row);
  if (rv.rows() != 1 || rv.cols() != av.cols()) throw ValidationError("add_row: bad shape");
  Matrix out = av.rowwise() + rv.row(0);
  return Push(std::move(out), [a, row](Graph* g, const Matrix& grad) {
    g->Accumulate(a, grad);
    g->Accumulate(row, grad.colwise().sum());
  });
}

Var Graph::Scale(Var a, double s) {
  return Push(Value(a) * s, [a, s](Graph* g, const Matrix& grad) {
    g->Accumulate(a, grad * s);
  });
}

Var Graph::MulConstant(Var a, const Matrix& c) {
  CheckSameShape(Value(a), c, "mul_constant");
  return Push(Value(a).cwiseProduct(c), [a, c](Graph* g, const Matrix& grad) {
    g->Accumulate(a, grad.cwiseProduct(c));
  });
}

Var Graph::Relu(Var a) {
  int self = static_cast<int>(nodes_.size());
  return Push(Value(a).cwiseMax(0.0), [a, self](Graph* g, const Matrix& grad) {
    const Matrix& out = g->nodes_[self].value;
    g->Accumulate(a, (out.array() > 0.0).select(grad, 0.0));
  });
}

Var Graph::Tanh(Var a) {
  int self = static_cast<int>(nodes_.size());
  return Push(Value(a).array().tanh().matrix(), [a, self](Graph* g, const Matrix& grad) {
    const Matrix& out = g->nodes_[self].value;
    g->Accumulate(a, grad.cwiseProduct((1.0 - out.array().square()).matrix()));
  });
}

Var Graph::LayerNorm(Var x, Var gamma, Var beta, double eps) {
  auto xhat = std::make_shared<Matrix>();
  auto inv_std = std::make_shared<std::vector<double>>();
  Matrix out = kernels::LayerNorm(Value(x), Value(gamma).row(0), Value(beta).row(0), eps,
                                  xhat.get(), inv_std.get());
  return Push(std::move(out), [x, gamma, beta, xhat, inv_std](Graph* g, const Matrix& grad) {
    const RowVector gam = g->Value(gamma).row(0);
    g->Accumulate(gamma, grad.cwiseProduct(*xhat).colwise().sum());
    g->Accumulate(beta, grad.colwise().sum());
    const double n = static_cast<double>(grad.cols());
    Matrix dx(grad.rows(), grad.cols());
    for (Eigen::Index r = 0; r < grad.rows(); ++r) {
      RowVector dxhat = grad.row(r).cwiseProduct(gam);
      double mean_d = dxhat.sum() / n;
      double mean_dx = dxhat.cwiseProduct(xhat->row(r)).sum() / n;
      dx.row(r) = (*inv_std)[r] *
                  (dxhat.array() - mean_d - xhat->row(r).array() * mean_dx).matrix();
    }
    g->Accumulate(x, dx);
  });
}

Var Graph::Attention(Var q, Var k, Var v, int heads, const AttentionMask& mask) {
  const Matrix& qv = Value(q);
  if (qv.cols() % heads != 0 || Value(k).cols() != qv.cols() ||
      Value(v).cols() != qv.cols() || Value(k).rows() != Value(v).rows()) {
    throw ValidationError("attention: inconsistent shapes");
  }
  auto probs = std::make_shared<std::vector<Matrix>>();
  Matrix out = kernels::Attention(qv, Value(k), Value(v), heads, mask, probs.get());
  return Push(std::move(out), [q, k, v, heads, probs](Graph* g, const Matrix& grad) {
    const Matrix& qm = g->Value(q);
    const Matrix& km = g->Value(k);
    const Matrix& vm = g->Value(v);
    const Eigen::Index dh = qm.cols() / heads;
    const double scale = 1.0 / std::sqrt(static_cast<double>(dh));
    Matrix dq = Matrix::Zero(qm.rows(), qm.cols());
    Matrix dk = Matrix::Zero(km.rows(), km.cols());
    Matrix dv = Matrix::Zero(vm.rows(), vm.cols());
    for (int h = 0; h < heads; ++h) {
      const Matrix& p = (*probs)[h];
      Matrix d_out = grad.middleCols(h * dh, dh);
      dv.middleCols(h * dh, dh) = p.transpose() * d_out;
      Matrix dp = d_out * vm.middleCols(h * dh, dh).transpose();
      Eigen::VectorXd row_dot = dp.cwiseProduct(p).rowwise().sum();
      Matrix ds = p.cwiseProduct((dp.colwise() - row_dot));
      dq.middleCols(h * dh, dh) = ds * km.middleCols(h * dh, dh) * scale;
      dk.middleCols(h * dh, dh) = ds.transpose() * qm.middleCols(h * dh, dh) * scale;
    }
    g->Accumulate(q, dq);
    g->Accumulate(k, dk);
    g->Accumulate(v, dv);
  });
}

Var Graph::GatherRows(Var table, const std::vector<int>& ids) {
  const Matrix& t = Value(table);
  Matrix out(static_cast<Eigen::Index>(ids.size()), t.cols());
  for (size_t i = 0; i < ids.size(); ++i) {
    if (ids[i] < 0 || ids[i] >= t.rows()) {
      throw ValidationError("gather: id " + std::to_string(ids[i]) + " outside table of " +
                            std::to_string(t.rows()) + " rows");
    }
    out.row(static_cast<Eigen::Index>(i)) = t.row(ids[i]);
  }
  return Push(std::move(out), [table, ids](Graph* g, const Matrix& grad) {
    const Matrix& t = g->Value(table);
    Matrix dt = Matrix::Zero(t.rows(), t.cols());
    for (size_t i = 0; i < ids.size(); ++i) dt.row(ids[i]) += grad.row(static_cast<Eigen::Index>(i));
    g->Accumulate(table, dt);
  });
}

Var Graph::ConcatRows(Var a, Var b) {
  const Matrix& av = Value(a);
  const Matrix& bv = Value(b);
  if (av.cols() != bv.cols()) throw ValidationError("concat_rows: column mismatch");
  Matrix out(av.rows() + bv.rows(), av.cols());
  out.topRows(av.rows()) = av;
  out.bottomRows(bv.rows()) = bv;
  const Eigen::Index na = av.rows(), nb = bv.rows();
  return Push(std::move(out), [a, b, na, nb](Graph* g, const Matrix& grad) {
    g->Accumulate(a, grad.topRows(na));
    g->Accumulate(b, grad.bottomRows(nb));
  });
}

Var Graph::Unfold(Var x, int kernel) {
  if (kernel < 1 || kernel % 2 == 0) throw ValidationError("unfold: kernel must be odd");
  const Matrix& xv = Value(x);
  const Eigen::Index t = xv.rows(), c = xv.cols();
  const int pad = (kernel - 1) / 2;
  Matrix out = Matrix::Zero(t, c * kernel);
  for (Eigen::Index r = 0; r < t; ++r) {
    for (int j = 0; j < kernel; ++j) {
      Eigen::Index src = r + j - pad;
      if (src >= 0 && src < t) out.block(r, j * c, 1, c) = xv.row(src);
    }
  }
  return Push(std::move(out), [x, kernel, pad, t, c](Graph* g, const Matrix& grad) {
    Matrix dx = Matrix::Zero(t, c);
    for (Eigen::Index r = 0; r < t; ++r) {
      for (int j = 0; j < kernel; ++j) {
        Eigen::Index src = r + j - pad;
        if (src >= 0 && src < t) dx.row(src) += grad.block(r, j * c, 1, c);
      }
    }
    g->Accumulate(x, dx);
  });
}

Var Graph::SquaredErrorSum(Var pred, const Matrix& target, int rows) {
  const Matrix& p = Value(pred);
  if (p.cols() != target.cols() || p.rows() < rows || target.rows() < rows) {
    throw ValidationError("squared_error: shape mismatch");
  }
  Matrix diff = p.topRows(rows) - target.topRows(rows);
  Matrix out(1, 1);
  out(0, 0) = diff.squaredNorm();
  return Push(std::move(out), [pred, diff, rows](Graph* g, const Matrix& grad) {
    const Matrix& p = g->Value(pred);
    Matrix dp = Matrix::Zero(p.rows(), p.cols());
    dp.topRows(rows) = 2.0 * grad(0, 0) * diff;
    g->Accumulate(pred, dp);
  });
}

Var Graph::BceWithLogitsSum(Var logits, const std::vector<double>& targets, int rows) {
  const Matrix& z = Value(logits);
  if (z.cols() != 1 || z.rows() < rows || static_cast<int>(targets.size()) < rows) {
    throw ValidationError("bce: shape mismatch");
  }
  Matrix out(1, 1);
  out(0, 0) = 0.0;
  for (int i = 0; i < rows; ++i) out(0, 0) += BceWithLogits(z(i, 0), targets[i]);
  return Push(std::move(out), [logits, targets, rows](Graph* g, const Matrix& grad) {
    const Matrix& z = g->Value(logits);
    Matrix dz = Matrix::Zero(z.rows(), 1);
    for (int i = 0; i < rows; ++i) dz(i, 0) = grad(0, 0) * (Sigmoid(z(i, 0)) - targets[i]);
    g->Accumulate(logits, dz);
  });
}

void Graph::Backward(Var root, std::vector<Matrix>* param_grads) {
  const Matrix& rv = Value(root);
  if (rv.rows() != 1 || rv.cols() != 1) throw ValidationError("backward: root must be 1x1");
  grads_.assign(nodes_.size(), Matrix());
  has_grad_.assign(nodes_.size(), false);
  grads_[root.id] = Matrix::Ones(1, 1);
  has_grad_[root.id] = true;
  for (int i = root.id; i >= 0; --i) {
    if (!has_grad_[i]) continue;
    Node& node = nodes_[i];
    if (node.param_index >= 0 && param_grads != nullptr) {
      (*param_grads)[node.param_index] += grads_[i];
    }
    if (node.backward) node.backward(this, grads_[i]);
    grads_[i].resize(0, 0);
  }
}

}  // namespace nn
}  // namespace ctts
