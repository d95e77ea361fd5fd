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

#include "ctts/model/model.h"

#include <cmath>
#include <string>

#include "ctts/common/error.h"
#include "ctts/common/random.h"

namespace ctts {

using nn::Graph;
using nn::Matrix;
using nn::RowVector;
using nn::Var;

namespace {

const uint64_t kPrenetSite[2] = {Fnv1a64("dec.prenet.0"), Fnv1a64("dec.prenet.1")};

std::string Layer(const char* stack, int i) {
  return std::string(stack) + "." + std::to_string(i);
}

void FillDropoutRow(uint64_t seed, uint64_t site, int row, double p, double* out, int cols) {
  Rng rng(CombineSeeds(seed, site, static_cast<uint64_t>(row)));
  const double keep_scale = 1.0 / (1.0 - p);
  for (int c = 0; c < cols; ++c) out[c] = rng.UniformDouble() >= p ? keep_scale : 0.0;
}

// Thin helpers that resolve parameter names against one ModelParams.
class Builder {
 public:
  Builder(Graph* g, const ModelParams& params, const ModelConfig& config,
          const ForwardOptions& options)
      : g_(g), params_(params), config_(config), options_(options) {}

  Var P(const std::string& name) { return g_->Param(params_.tensors.Index(name)); }

  Var Linear(Var x, const std::string& prefix) {
    return g_->AddRow(g_->MatMul(x, P(prefix + ".w")), P(prefix + ".b"));
  }

  Var LayerNorm(Var x, const std::string& prefix) {
    return g_->LayerNorm(x, P(prefix + ".g"), P(prefix + ".b"), config_.layer_norm_eps);
  }

  Var ResidualDropout(Var x, const std::string& site) {
    if (!options_.training || config_.dropout <= 0.0) return x;
    const Matrix& v = g_->Value(x);
    return g_->MulConstant(x, DropoutMask(options_.dropout_seed, Fnv1a64(site),
                                          static_cast<int>(v.rows()),
                                          static_cast<int>(v.cols()), config_.dropout));
  }

  Var MultiHead(Var query_in, Var kv_in, const std::string& prefix,
                const nn::AttentionMask& mask) {
    Var q = Linear(query_in, prefix + ".q");
    Var k = Linear(kv_in, prefix + ".k");
    Var v = Linear(kv_in, prefix + ".v");
    Var a = g_->Attention(q, k, v, config_.n_heads, mask);
    return Linear(a, prefix + ".o");
  }

  Var FeedForward(Var x, const std::string& prefix) {
    return Linear(g_->Relu(Linear(x, prefix + ".ffn1")), prefix + ".ffn2");
  }

  Graph* g_;
  const ModelParams& params_;
  const ModelConfig& config_;
  const ForwardOptions& options_;
};

enum class Init { kXavier, kZero, kOne, kEmbedding };

struct TensorSpec {
  std::string name;
  int rows;
  int cols;
  Init init;
};

void AddLinear(std::vector<TensorSpec>* specs, const std::string& prefix, int in, int out) {
  specs->push_back({prefix + ".w", in, out, Init::kXavier});
  specs->push_back({prefix + ".b", 1, out, Init::kZero});
}

void AddLayerNorm(std::vector<TensorSpec>* specs, const std::string& prefix, int dim) {
  specs->push_back({prefix + ".g", 1, dim, Init::kOne});
  specs->push_back({prefix + ".b", 1, dim, Init::kZero});
}

void AddAttention(std::vector<TensorSpec>* specs, const std::string& prefix, int d) {
  for (const char* proj : {".q", ".k", ".v", ".o"}) AddLinear(specs, prefix + proj, d, d);
}

int PostnetIn(const ModelConfig& c, int j) { return j == 0 ? c.n_mels : c.postnet_channels; }
int PostnetOut(const ModelConfig& c, int j) {
  return j == c.postnet_layers - 1 ? c.n_mels : c.postnet_channels;
}

}  // namespace

Matrix MelStats::Normalize(const Matrix& frames) const {
  if (empty()) return frames;
  Matrix out(frames.rows(), frames.cols());
  for (Eigen::Index c = 0; c < frames.cols(); ++c) {
    out.col(c) = (frames.col(c).array() - mean[c]) / stddev[c];
  }
  return out;
}

Matrix MelStats::Denormalize(const Matrix& frames) const {
  if (empty()) return frames;
  Matrix out(frames.rows(), frames.cols());
  for (Eigen::Index c = 0; c < frames.cols(); ++c) {
    out.col(c) = frames.col(c).array() * stddev[c] + mean[c];
  }
  return out;
}

Matrix DropoutMask(uint64_t seed, uint64_t site, int rows, int cols, double p) {
  Matrix mask(rows, cols);
  for (int r = 0; r < rows; ++r) FillDropoutRow(seed, site, r, p, &mask(r, 0), cols);
  return mask;
}

namespace {

std::vector<TensorSpec> Layout(const ModelConfig& config) {
  std::vector<TensorSpec> t;
  const int d = config.d_model;
  t.push_back({"text_embedding", config.text_vocab_size, d, Init::kEmbedding});
  t.push_back({"phone_embedding", config.phone_vocab_size, d, Init::kEmbedding});
  t.push_back({"segment_embedding", 2, d, Init::kEmbedding});
  for (int i = 0; i < config.n_enc_layers; ++i) {
    const std::string p = Layer("enc", i);
    AddLayerNorm(&t, p + ".ln1", d);
    AddAttention(&t, p + ".attn", d);
    AddLayerNorm(&t, p + ".ln2", d);
    AddLinear(&t, p + ".ffn1", d, config.ffn_dim);
    AddLinear(&t, p + ".ffn2", config.ffn_dim, d);
  }
  AddLayerNorm(&t, "enc.ln", d);
  AddLinear(&t, "dec.prenet.0", config.n_mels, config.prenet_dim);
  AddLinear(&t, "dec.prenet.1", config.prenet_dim, config.prenet_dim);
  AddLinear(&t, "dec.in", config.prenet_dim, d);
  for (int i = 0; i < config.n_dec_layers; ++i) {
    const std::string p = Layer("dec", i);
    AddLayerNorm(&t, p + ".ln1", d);
    AddAttention(&t, p + ".self", d);
    AddLayerNorm(&t, p + ".ln2", d);
    AddAttention(&t, p + ".cross", d);
    AddLayerNorm(&t, p + ".ln3", d);
    AddLinear(&t, p + ".ffn1", d, config.ffn_dim);
    AddLinear(&t, p + ".ffn2", config.ffn_dim, d);
  }
  AddLayerNorm(&t, "dec.ln", d);
  AddLinear(&t, "dec.mel", d, config.n_mels);
  AddLinear(&t, "dec.stop", d, 1);
  for (int j = 0; j < config.postnet_layers; ++j) {
    AddLinear(&t, "postnet." + std::to_string(j),
              config.postnet_kernel * PostnetIn(config, j), PostnetOut(config, j));
  }
  return t;
}

}  // namespace

ModelParams InitParams(const ModelConfig& config, uint64_t seed) {
  config.Validate();
  Rng rng(seed);
  ModelParams params;
  for (const TensorSpec& spec : Layout(config)) {
    Matrix m(spec.rows, spec.cols);
    double std = 0.0;
    switch (spec.init) {
      case Init::kZero: m.setZero(); break;
      case Init::kOne: m.setOnes(); break;
      case Init::kXavier: std = std::sqrt(2.0 / (spec.rows + spec.cols)); break;
      case Init::kEmbedding: std = 1.0 / std::sqrt(static_cast<double>(spec.cols)); break;
    }
    if (std > 0.0) {
      for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = rng.Normal() * std;
    }
    params.tensors.Add(spec.name, std::move(m));
  }
  return params;
}

void CheckParamShapes(const ModelParams& params, const ModelConfig& config) {
  const std::vector<TensorSpec> layout = Layout(config);
  const auto& a = params.tensors;
  if (a.size() != static_cast<int>(layout.size())) {
    throw ConfigError("parameter count " + std::to_string(a.size()) +
                      " does not match config (" + std::to_string(layout.size()) + ")");
  }
  for (int i = 0; i < a.size(); ++i) {
    const TensorSpec& s = layout[i];
    if (a.Name(i) != s.name || a[i].rows() != s.rows || a[i].cols() != s.cols) {
      throw ConfigError("parameter " + a.Name(i) + " " + std::to_string(a[i].rows()) + "x" +
                        std::to_string(a[i].cols()) + " does not match config shape of " +
                        s.name + " " + std::to_string(s.rows) + "x" + std::to_string(s.cols));
    }
  }
  if (!params.stats.empty() &&
      (static_cast<int>(params.stats.mean.size()) != config.n_mels ||
       params.stats.stddev.size() != params.stats.mean.size())) {
    throw ConfigError("mel statistics do not match n_mels");
  }
}

Var BuildEncoder(Graph* g, const ModelParams& params, const ModelConfig& config,
                 const std::vector<int>& context_ids, const std::vector<int>& phone_ids,
                 int padded_length, const ForwardOptions& options) {
  const int nc = static_cast<int>(context_ids.size());
  const int np = static_cast<int>(phone_ids.size());
  const int valid = nc + np;
  if (np == 0) throw ValidationError("encoder: phoneme sequence is empty");
  if (valid > config.max_positions) {
    throw ValidationError("encoder: |C| + |P| = " + std::to_string(valid) +
                          " exceeds max_positions " + std::to_string(config.max_positions));
  }
  const int total = std::max(valid, padded_length);
  Builder b(g, params, config, options);

  std::vector<int> phones = phone_ids;
  phones.resize(total - nc, 0);
  Var x = g->GatherRows(b.P("phone_embedding"), phones);
  if (nc > 0) x = g->ConcatRows(g->GatherRows(b.P("text_embedding"), context_ids), x);
  x = g->Scale(x, std::sqrt(static_cast<double>(config.d_model)));
  std::vector<int> segments(total, 1);
  std::fill(segments.begin(), segments.begin() + nc, 0);
  x = g->Add(x, g->GatherRows(b.P("segment_embedding"), segments));
  x = g->Add(x, g->Constant(nn::kernels::SinusoidalPositions(0, total, config.d_model)));

  const nn::AttentionMask mask{valid, false};
  for (int i = 0; i < config.n_enc_layers; ++i) {
    const std::string p = Layer("enc", i);
    Var h = b.LayerNorm(x, p + ".ln1");
    x = g->Add(x, b.ResidualDropout(b.MultiHead(h, h, p + ".attn", mask), p + ".attn"));
    h = b.LayerNorm(x, p + ".ln2");
    x = g->Add(x, b.ResidualDropout(b.FeedForward(h, p), p + ".ffn"));
  }
  return b.LayerNorm(x, "enc.ln");
}

DecoderVars BuildDecoder(Graph* g, const ModelParams& params, const ModelConfig& config,
                         Var encoder, int encoder_valid, const Matrix& targets,
                         int valid_frames, const ForwardOptions& options) {
  const int frames = static_cast<int>(targets.rows());
  if (targets.cols() != config.n_mels) {
    throw ConfigError("decoder: targets have " + std::to_string(targets.cols()) +
                      " mel bins, model expects " + std::to_string(config.n_mels));
  }
  if (frames < 1 || valid_frames < 1 || valid_frames > frames) {
    throw ConfigError("decoder: invalid frame counts");
  }
  Builder b(g, params, config, options);

  Matrix inputs = Matrix::Zero(frames, config.n_mels);
  if (frames > 1) inputs.bottomRows(frames - 1) = targets.topRows(frames - 1);
  Var x = g->Constant(std::move(inputs));
  for (int l = 0; l < 2; ++l) {
    x = g->Relu(b.Linear(x, "dec.prenet." + std::to_string(l)));
    if (config.prenet_dropout > 0.0) {
      x = g->MulConstant(x, DropoutMask(options.dropout_seed, kPrenetSite[l], frames,
                                        config.prenet_dim, config.prenet_dropout));
    }
  }
  x = b.Linear(x, "dec.in");
  x = g->Add(x, g->Constant(nn::kernels::SinusoidalPositions(0, frames, config.d_model)));

  const nn::AttentionMask self_mask{-1, true};
  const nn::AttentionMask cross_mask{encoder_valid, false};
  for (int i = 0; i < config.n_dec_layers; ++i) {
    const std::string p = Layer("dec", i);
    Var h = b.LayerNorm(x, p + ".ln1");
    x = g->Add(x, b.ResidualDropout(b.MultiHead(h, h, p + ".self", self_mask), p + ".self"));
    h = b.LayerNorm(x, p + ".ln2");
    x = g->Add(x, b.ResidualDropout(b.MultiHead(h, encoder, p + ".cross", cross_mask),
                                    p + ".cross"));
    h = b.LayerNorm(x, p + ".ln3");
    x = g->Add(x, b.ResidualDropout(b.FeedForward(h, p), p + ".ffn"));
  }
  x = b.LayerNorm(x, "dec.ln");

  DecoderVars out;
  out.pre = b.Linear(x, "dec.mel");
  out.stop = b.Linear(x, "dec.stop");
  Var y = out.pre;
  if (valid_frames < frames) {
    Matrix row_mask = Matrix::Zero(frames, config.n_mels);
    row_mask.topRows(valid_frames).setOnes();
    y = g->MulConstant(y, row_mask);
  }
  for (int j = 0; j < config.postnet_layers; ++j) {
    y = b.Linear(g->Unfold(y, config.postnet_kernel), "postnet." + std::to_string(j));
    if (j + 1 < config.postnet_layers) y = g->Tanh(y);
  }
  out.post = g->Add(out.pre, y);
  return out;
}

EncoderOutput Encode(const TokenSequence& context, const PhonemeSequence& phonemes,
                     const ModelParams& params, const ModelConfig& config) {
  Graph g(&params.tensors);
  Var h = BuildEncoder(&g, params, config, context.ids, phonemes.ids, 0, ForwardOptions{});
  EncoderOutput out;
  out.states = g.Value(h);
  out.valid_rows = static_cast<int>(context.size() + phonemes.size());
  out.context_rows = static_cast<int>(context.size());
  return out;
}

TeacherForcedOutput DecodeTeacherForced(const EncoderOutput& encoder, const Matrix& targets,
                                        const ModelParams& params, const ModelConfig& config,
                                        const ForwardOptions& options) {
  Graph g(&params.tensors);
  Var h = g.Constant(encoder.states);
  DecoderVars d = BuildDecoder(&g, params, config, h, encoder.valid_rows, targets,
                               static_cast<int>(targets.rows()), options);
  TeacherForcedOutput out;
  out.pre = g.Value(d.pre);
  out.post = g.Value(d.post);
  out.stop_logits = g.Value(d.stop).col(0);
  return out;
}

IncrementalDecoder::IncrementalDecoder(const ModelParams& params, const ModelConfig& config,
                                       const EncoderOutput& encoder, uint64_t prenet_seed)
    : params_(params),
      config_(config),
      encoder_valid_(encoder.valid_rows),
      prenet_seed_(prenet_seed) {
  const auto& t = params.tensors;
  layers_.resize(config.n_dec_layers);
  for (int i = 0; i < config.n_dec_layers; ++i) {
    const std::string p = Layer("dec", i) + ".cross";
    layers_[i].cross_k = (encoder.states * t.Get(p + ".k.w")).rowwise() +
                         t.Get(p + ".k.b").row(0);
    layers_[i].cross_v = (encoder.states * t.Get(p + ".v.w")).rowwise() +
                         t.Get(p + ".v.b").row(0);
    layers_[i].self_k.resize(0, config.d_model);
    layers_[i].self_v.resize(0, config.d_model);
  }
}

StepOutput IncrementalDecoder::StepFromGo() {
  return Step(RowVector::Zero(config_.n_mels));
}

StepOutput IncrementalDecoder::Step(const RowVector& previous_frame) {
  if (previous_frame.size() != config_.n_mels) {
    throw ConfigError("decode_step: frame has " + std::to_string(previous_frame.size()) +
                      " bins, model expects " + std::to_string(config_.n_mels));
  }
  const auto& t = params_.tensors;
  auto linear = [&](const Matrix& x, const std::string& prefix) -> Matrix {
    return (x * t.Get(prefix + ".w")).rowwise() + t.Get(prefix + ".b").row(0);
  };
  auto layer_norm = [&](const Matrix& x, const std::string& prefix) {
    return nn::kernels::LayerNorm(x, t.Get(prefix + ".g").row(0), t.Get(prefix + ".b").row(0),
                                  config_.layer_norm_eps);
  };
  const int step = steps_;
  Matrix x = previous_frame;
  for (int l = 0; l < 2; ++l) {
    x = linear(x, "dec.prenet." + std::to_string(l)).cwiseMax(0.0);
    if (config_.prenet_dropout > 0.0) {
      Matrix mask(1, config_.prenet_dim);
      FillDropoutRow(prenet_seed_, kPrenetSite[l], step, config_.prenet_dropout, mask.data(),
                     config_.prenet_dim);
      x = x.cwiseProduct(mask);
    }
  }
  x = linear(x, "dec.in") + nn::kernels::SinusoidalPositions(step, 1, config_.d_model);

  for (int i = 0; i < config_.n_dec_layers; ++i) {
    const std::string p = Layer("dec", i);
    LayerCache& cache = layers_[i];
    Matrix h = layer_norm(x, p + ".ln1");
    Matrix q = linear(h, p + ".self.q");
    cache.self_k.conservativeResize(step + 1, Eigen::NoChange);
    cache.self_v.conservativeResize(step + 1, Eigen::NoChange);
    cache.self_k.row(step) = linear(h, p + ".self.k");
    cache.self_v.row(step) = linear(h, p + ".self.v");
    Matrix a = nn::kernels::Attention(q, cache.self_k, cache.self_v, config_.n_heads, {});
    x += linear(a, p + ".self.o");

    h = layer_norm(x, p + ".ln2");
    q = linear(h, p + ".cross.q");
    a = nn::kernels::Attention(q, cache.cross_k, cache.cross_v, config_.n_heads,
                               {encoder_valid_, false});
    x += linear(a, p + ".cross.o");

    h = layer_norm(x, p + ".ln3");
    x += linear(linear(h, p + ".ffn1").cwiseMax(0.0), p + ".ffn2");
  }
  x = layer_norm(x, "dec.ln");
  StepOutput out;
  out.frame = linear(x, "dec.mel").row(0);
  out.stop_logit = linear(x, "dec.stop")(0, 0);
  out.stop_prob = 1.0 / (1.0 + std::exp(-out.stop_logit));
  ++steps_;
  return out;
}

StepOutput DecodeStep(const EncoderOutput& encoder, const std::vector<RowVector>& history,
                      const ModelParams& params, const ModelConfig& config,
                      uint64_t prenet_seed) {
  if (static_cast<int>(history.size()) >= config.max_decode_steps) {
    throw LimitError("decode_step: history of " + std::to_string(history.size()) +
                     " frames reaches max_decode_steps " +
                     std::to_string(config.max_decode_steps));
  }
  IncrementalDecoder decoder(params, config, encoder, prenet_seed);
  StepOutput out = decoder.StepFromGo();
  for (const auto& frame : history) out = decoder.Step(frame);
  return out;
}

Matrix ApplyPostnet(const ModelParams& params, const ModelConfig& config, const Matrix& pre) {
  Graph g(&params.tensors);
  ForwardOptions options;
  Builder b(&g, params, config, options);
  Var x = g.Constant(pre);
  Var y = x;
  for (int j = 0; j < config.postnet_layers; ++j) {
    y = b.Linear(g.Unfold(y, config.postnet_kernel), "postnet." + std::to_string(j));
    if (j + 1 < config.postnet_layers) y = g.Tanh(y);
  }
  return g.Value(g.Add(x, y));
}

}  // namespace ctts
