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

#include "toy_workspace.h"

#include <set>
#include <vector>

#include "ctts/dataset/builder.h"
#include "ctts/dataset/manifest.h"
#include "ctts/text/lexicon.h"
#include "ctts/train/embedding.h"

namespace ctts {
namespace testing_util {

namespace fs = std::filesystem;

fs::path SourceLexiconPath() {
  return fs::path(CTTS_SOURCE_DIR) / "data" / "lexicon" / "cmudict.dict";
}

MelConfig ToyMelConfig() {
  MelConfig c;
  c.sample_rate = 8000;
  c.n_fft = 256;
  c.win_length = 256;
  c.hop_length = 100;
  c.n_mels = 16;
  c.fmax = 4000;
  return c;
}

ModelConfig ToyModelConfig(int d_model) {
  ModelConfig c;
  c.d_model = d_model;
  c.n_enc_layers = 2;
  c.n_dec_layers = 2;
  c.n_heads = 2;
  c.ffn_dim = 2 * d_model;
  c.n_mels = ToyMelConfig().n_mels;
  c.prenet_dim = d_model;
  c.postnet_channels = d_model;
  c.postnet_layers = 3;
  c.max_positions = 128;
  c.max_decode_steps = 200;
  return c;
}

PipelineConfig ToyWorkspace::Pipeline(const ModelConfig& model, int max_steps,
                                      uint64_t seed) const {
  PipelineConfig p;
  p.model = model;
  p.mel = ToyMelConfig();
  p.pretrain.manifest = speech_manifest;
  p.finetune.manifest = ctts_manifest;
  for (StageSpec* s : {&p.pretrain, &p.finetune}) {
    s->hparams.batch_size = 4;
    s->hparams.warmup_steps = 10;
    s->hparams.max_steps = max_steps;
  }
  p.embedding_bundle = bundle;
  p.lexicon = lexicon;
  p.vocab = vocab;
  p.out_dir = dir / "runs";
  p.seed = seed;
  return p;
}

ToyWorkspace MakeToyWorkspace(const fs::path& dir, const ToyCorpusOptions& options,
                              int fanout, int bundle_width, uint64_t seed) {
  ToyWorkspace w;
  w.dir = dir;
  w.lexicon = SourceLexiconPath();
  const Lexicon lexicon = Lexicon::Load(w.lexicon);
  ToyCorpusOptions opts = options;
  opts.sample_rate = ToyMelConfig().sample_rate;
  const ToyCorpusFiles files = WriteToyCorpus(opts, lexicon, dir);
  w.speech_manifest = files.speech_manifest;
  w.text_corpus = files.text_corpus;

  DatasetConfig data;
  data.speech_manifest = files.speech_manifest;
  data.text_corpus = files.text_corpus;
  data.fanout = fanout;
  BuildDataset(data, dir / "data", seed);
  w.ctts_manifest = dir / "data" / "ctts.jsonl";

  const TextVocab vocab = BuildTrainingVocab(ReadManifest(w.ctts_manifest));
  w.vocab = dir / "vocab.txt";
  vocab.Save(w.vocab);
  w.bundle = dir / "bundle";
  w.bundle_width = bundle_width;
  SaveEmbeddingBundle(RandomEmbeddingBundle(vocab.tokens(), bundle_width, seed), w.bundle);
  return w;
}

}  // namespace testing_util
}  // namespace ctts
