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

#include "ctts/train/trainer.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <spdlog/spdlog.h>

#include "ctts/audio/wav.h"
#include "ctts/common/error.h"
#include "ctts/common/random.h"
#include "ctts/dataset/manifest.h"
#include "ctts/nn/graph.h"
#include "ctts/text/phonemizer.h"
#include "ctts/train/optimizer.h"

namespace ctts {

namespace {

constexpr double kMinStddev = 1e-3;

nn::Matrix ToMatrix(const MelMatrix& m) { return m.cast<double>(); }

bool Finite(const LossBreakdown& l) {
  return std::isfinite(l.mel_mse) && std::isfinite(l.stop_bce) && std::isfinite(l.total);
}

}  // namespace

std::vector<int> ContextIds(const CttsSample& sample, ContextMode mode,
                            const TextVocab& vocab, int max_length) {
  switch (mode) {
    case ContextMode::kBlank: return {};
    case ContextMode::kContext: return TokenizeContext(sample.context, vocab, max_length).ids;
    case ContextMode::kLabels: return EncodeLabels(sample.emotion, sample.speaker, vocab).ids;
  }
  return {};
}

std::vector<TrainingExample> PrepareExamples(const std::vector<CttsSample>& samples,
                                             ContextMode mode, const TrainingAssets& assets,
                                             const MelConfig& mel_config, int max_positions) {
  std::vector<TrainingExample> out;
  out.reserve(samples.size());
  for (const auto& s : samples) {
    TrainingExample ex;
    ex.id = s.id;
    try {
      ex.context_ids = ContextIds(s, mode, assets.vocab, max_positions);
      ex.phone_ids = Phonemize(s.content, assets.lexicon, max_positions).ids;
    } catch (const ValidationError& e) {
      throw ValidationError("sample " + s.id + ": " + e.what());
    }
    const size_t length = ex.context_ids.size() + ex.phone_ids.size();
    if (length > static_cast<size_t>(max_positions)) {
      throw ValidationError("sample " + s.id + ": |C| + |P| = " + std::to_string(length) +
                            " exceeds max_positions " + std::to_string(max_positions));
    }
    try {
      const Waveform wave = LoadWav(s.audio_path, mel_config.sample_rate);
      ex.mel = ToMatrix(ComputeMelSpectrogram(wave, mel_config).frames);
    } catch (const Error& e) {
      throw TrainingError("sample " + s.id + ": cannot read audio " + s.audio_path + ": " +
                          e.what());
    }
    out.push_back(std::move(ex));
  }
  return out;
}

MelStats ComputeMelStats(const std::vector<TrainingExample>& examples) {
  MelStats stats;
  if (examples.empty()) return stats;
  const Eigen::Index bins = examples.front().mel.cols();
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(bins);
  Eigen::VectorXd sq = Eigen::VectorXd::Zero(bins);
  double count = 0.0;
  for (const auto& ex : examples) {
    sum += ex.mel.colwise().sum().transpose();
    count += static_cast<double>(ex.mel.rows());
  }
  const Eigen::VectorXd mean = sum / count;
  for (const auto& ex : examples) {
    sq += (ex.mel.rowwise() - mean.transpose()).array().square().matrix().colwise().sum()
              .transpose();
  }
  stats.mean.resize(bins);
  stats.stddev.resize(bins);
  for (Eigen::Index b = 0; b < bins; ++b) {
    stats.mean[b] = mean[b];
    stats.stddev[b] = std::max(std::sqrt(sq[b] / count), kMinStddev);
  }
  return stats;
}

LossBreakdown BatchLoss(const ModelParams& params, const ModelConfig& config,
                        const std::vector<const TrainingExample*>& batch, double stop_weight,
                        const ForwardOptions& options, std::vector<nn::Matrix>* grads) {
  if (batch.empty()) throw ValidationError("empty batch");
  int max_enc = 0;
  int max_frames = 0;
  for (const auto* ex : batch) {
    max_enc = std::max<int>(max_enc, ex->context_ids.size() + ex->phone_ids.size());
    max_frames = std::max<int>(max_frames, ex->mel.rows());
  }
  nn::Graph g(&params.tensors);
  nn::Var sse;
  nn::Var bce;
  double cells = 0.0;
  double steps = 0.0;
  for (size_t i = 0; i < batch.size(); ++i) {
    const TrainingExample& ex = *batch[i];
    const int frames = static_cast<int>(ex.mel.rows());
    if (ex.mel.cols() != config.n_mels) {
      throw ConfigError("sample " + ex.id + ": mel has " + std::to_string(ex.mel.cols()) +
                        " bins, model expects " + std::to_string(config.n_mels));
    }
    ForwardOptions sample_options = options;
    sample_options.dropout_seed = CombineSeeds(options.dropout_seed, i);
    nn::Var enc = BuildEncoder(&g, params, config, ex.context_ids, ex.phone_ids, max_enc,
                               sample_options);
    nn::Matrix target = nn::Matrix::Zero(max_frames, config.n_mels);
    target.topRows(frames) = ex.mel;
    const int enc_valid = static_cast<int>(ex.context_ids.size() + ex.phone_ids.size());
    DecoderVars d =
        BuildDecoder(&g, params, config, enc, enc_valid, target, frames, sample_options);
    nn::Var s = g.Add(g.SquaredErrorSum(d.pre, target, frames),
                      g.SquaredErrorSum(d.post, target, frames));
    nn::Var b = g.BceWithLogitsSum(d.stop, StopTargets(max_frames, frames), frames);
    sse = sse.valid() ? g.Add(sse, s) : s;
    bce = bce.valid() ? g.Add(bce, b) : b;
    cells += static_cast<double>(frames) * config.n_mels;
    steps += frames;
  }
  nn::Var mel_mse = g.Scale(sse, 1.0 / cells);
  nn::Var stop_bce = g.Scale(bce, 1.0 / steps);
  nn::Var total = g.Add(mel_mse, g.Scale(stop_bce, stop_weight));
  LossBreakdown out;
  out.mel_mse = g.Scalar(mel_mse);
  out.stop_bce = g.Scalar(stop_bce);
  out.total = g.Scalar(total);
  if (grads != nullptr) {
    *grads = params.tensors.ZerosLike();
    g.Backward(total, grads);
  }
  return out;
}

std::vector<int> BatchIndices(size_t n_examples, int batch_size, uint64_t seed, int64_t step) {
  const int64_t n = static_cast<int64_t>(n_examples);
  const int64_t per_epoch = (n + batch_size - 1) / batch_size;
  const int64_t epoch = step / per_epoch;
  const int64_t b = step % per_epoch;
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(CombineSeeds(seed, Fnv1a64("epoch"), static_cast<uint64_t>(epoch)));
  rng.Shuffle(&order);
  const int64_t begin = b * batch_size;
  const int64_t end = std::min(n, begin + batch_size);
  return std::vector<int>(order.begin() + begin, order.begin() + end);
}

Checkpoint TrainStage(const StageSpec& spec, const Checkpoint& start, uint64_t seed,
                      const TrainingAssets& assets, const TrainOptions& options,
                      TrainStats* stats) {
  spec.Validate();
  VerifyAssets(start, assets);
  std::vector<CttsSample> rows = ReadManifest(spec.manifest, /*allow_speech_rows=*/true);
  std::vector<CttsSample> train;
  for (auto& r : rows) {
    if (r.split == Split::kTrain) train.push_back(std::move(r));
  }
  if (train.empty()) {
    throw ValidationError("manifest " + spec.manifest.string() + " has no train rows");
  }
  return TrainOnExamples(spec, start, seed,
                         PrepareExamples(train, spec.context_mode, assets, start.mel_config,
                                         start.model_config.max_positions),
                         options, stats);
}

Checkpoint TrainOnExamples(const StageSpec& spec, const Checkpoint& start, uint64_t seed,
                           std::vector<TrainingExample> examples, const TrainOptions& options,
                           TrainStats* stats) {
  spec.Validate();
  if (examples.empty()) throw ValidationError("stage " + spec.name + ": no training examples");
  const Hyperparams& h = spec.hparams;
  const ModelConfig& config = start.model_config;

  Checkpoint ckpt = start;
  const bool resume = start.stage == spec.name && start.step > 0 && !start.optimizer.empty();
  if (!resume) {
    ckpt.stage = spec.name;
    ckpt.step = 0;
    ckpt.optimizer = InitAdam(ckpt.params.tensors);
  }
  ckpt.seed = seed;
  ckpt.context_mode = spec.context_mode;
  if (ckpt.params.stats.empty()) ckpt.params.stats = ComputeMelStats(examples);
  for (auto& ex : examples) ex.mel = ckpt.params.stats.Normalize(ex.mel);

  std::vector<bool> mask(ckpt.params.tensors.size());
  for (int i = 0; i < ckpt.params.tensors.size(); ++i) {
    mask[i] = spec.IsTrainable(ckpt.params.tensors.Name(i));
  }

  const int64_t n = static_cast<int64_t>(examples.size());
  const int64_t per_epoch = (n + h.batch_size - 1) / h.batch_size;
  int64_t total = per_epoch * h.epochs;
  if (h.max_steps > 0) total = std::min<int64_t>(total, h.max_steps);

  TrainStats local;
  TrainStats& st = stats != nullptr ? *stats : local;
  for (int64_t s = ckpt.step; s < total; ++s) {
    std::vector<const TrainingExample*> batch;
    for (int i : BatchIndices(examples.size(), h.batch_size, seed, s)) {
      batch.push_back(&examples[i]);
      st.context_tokens_consumed += static_cast<int64_t>(examples[i].context_ids.size());
      st.context_lengths[static_cast<int>(examples[i].context_ids.size())] += 1;
    }
    ForwardOptions fwd;
    fwd.training = true;
    fwd.dropout_seed = CombineSeeds(seed, Fnv1a64("dropout"), static_cast<uint64_t>(s));
    std::vector<nn::Matrix> grads;
    StepLog entry;
    entry.step = s + 1;
    entry.loss = BatchLoss(ckpt.params, config, batch, h.stop_weight, fwd, &grads);
    if (!Finite(entry.loss)) {
      throw TrainingError("stage " + spec.name + " step " + std::to_string(s + 1) +
                          ": non-finite loss (mel_mse " + std::to_string(entry.loss.mel_mse) +
                          ", stop_bce " + std::to_string(entry.loss.stop_bce) + ")");
    }
    entry.grad_norm = ClipGradients(&grads, mask, h.grad_clip);
    if (!std::isfinite(entry.grad_norm)) {
      throw TrainingError("stage " + spec.name + " step " + std::to_string(s + 1) +
                          ": non-finite gradient norm");
    }
    entry.learning_rate = LearningRate(h, s);
    AdamUpdate(&ckpt.params.tensors, &ckpt.optimizer, grads, mask, h, entry.learning_rate);
    ckpt.step = s + 1;
    ++st.steps_run;
    st.log.push_back(entry);
    spdlog::info("{} step {} total {:.6f} mel_mse {:.6f} stop_bce {:.6f} lr {:.3e} |g| {:.3f}",
                 spec.name, entry.step, entry.loss.total, entry.loss.mel_mse,
                 entry.loss.stop_bce, entry.learning_rate, entry.grad_norm);
    if (options.on_step) options.on_step(entry);
    if (h.checkpoint_every > 0 && ckpt.step % h.checkpoint_every == 0 &&
        !options.checkpoint_dir.empty()) {
      SaveCheckpoint(ckpt, options.checkpoint_dir /
                               (spec.name + "-step" + std::to_string(ckpt.step) + ".ckpt"));
    }
  }

  nlohmann::json lengths = nlohmann::json::object();
  for (const auto& [len, count] : st.context_lengths) lengths[std::to_string(len)] = count;
  nlohmann::json summary = {{"steps_run", st.steps_run},
                            {"context_tokens_consumed", st.context_tokens_consumed},
                            {"context_lengths", lengths},
                            {"examples", n}};
  if (!st.log.empty()) {
    summary["first_loss"] = st.log.front().loss.total;
    summary["last_loss"] = st.log.back().loss.total;
  }
  ckpt.metadata["training"][spec.name] = summary;
  if (!options.checkpoint_dir.empty()) {
    SaveCheckpoint(ckpt, options.checkpoint_dir / (spec.name + ".ckpt"));
  }
  return ckpt;
}

}  // namespace ctts
