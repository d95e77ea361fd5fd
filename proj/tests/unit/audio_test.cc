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

#include <cmath>
#include <complex>
#include <cstring>
#include <numbers>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "ctts/audio/griffin_lim.h"
#include "ctts/audio/mel.h"
#include "ctts/audio/mel_io.h"
#include "ctts/audio/wav.h"
#include "ctts/common/error.h"
#include "ctts/common/file_util.h"
#include "ctts/common/random.h"
#include "test_util.h"

namespace ctts {
namespace {

Waveform Tone(double hz, int n, int sr = kDefaultSampleRate, double amp = 0.5) {
  Waveform w;
  w.sample_rate = sr;
  w.samples.resize(n);
  for (int i = 0; i < n; ++i) {
    w.samples[i] = static_cast<float>(amp * std::sin(2.0 * std::numbers::pi * hz * i / sr));
  }
  return w;
}

// Slaney mel scale written out from its definition.
double OracleHzToMel(double hz) {
  const double f_sp = 200.0 / 3.0;
  if (hz < 1000.0) return hz / f_sp;
  return 1000.0 / f_sp + std::log(hz / 1000.0) / (std::log(6.4) / 27.0);
}

double OracleMelToHz(double mel) {
  const double f_sp = 200.0 / 3.0;
  const double min_log_mel = 1000.0 / f_sp;
  if (mel < min_log_mel) return mel * f_sp;
  return 1000.0 * std::exp((std::log(6.4) / 27.0) * (mel - min_log_mel));
}

double OracleFilterWeight(const MelConfig& cfg, int m, double hz) {
  const double lo = OracleHzToMel(cfg.fmin), hi = OracleHzToMel(cfg.fmax);
  auto edge = [&](int i) { return OracleMelToHz(lo + (hi - lo) * i / (cfg.n_mels + 1)); };
  const double left = edge(m), center = edge(m + 1), right = edge(m + 2);
  double w = 0.0;
  if (hz > left && hz <= center) w = (hz - left) / (center - left);
  if (hz > center && hz < right) w = (right - hz) / (right - center);
  return w * 2.0 / (right - left);
}

// Mel bin with the largest response to a steady tone, from a direct DFT of
// one Hann-windowed frame.
int OraclePeakMelBin(double hz, const MelConfig& cfg) {
  const int n = cfg.n_fft;
  std::vector<double> power(cfg.n_bins());
  for (int k = 0; k < cfg.n_bins(); ++k) {
    std::complex<double> acc = 0.0;
    for (int i = 0; i < n; ++i) {
      const double window = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * i / n);
      const double x = std::sin(2.0 * std::numbers::pi * hz * i / cfg.sample_rate);
      acc += window * x * std::polar(1.0, -2.0 * std::numbers::pi * k * i / n);
    }
    power[k] = std::norm(acc);
  }
  int best = 0;
  double best_energy = -1.0;
  for (int m = 0; m < cfg.n_mels; ++m) {
    double energy = 0.0;
    for (int k = 0; k < cfg.n_bins(); ++k) {
      energy += OracleFilterWeight(cfg, m, static_cast<double>(k) * cfg.sample_rate / n) *
                power[k];
    }
    if (energy > best_energy) {
      best_energy = energy;
      best = m;
    }
  }
  return best;
}

int SpectralPeakBin(const std::vector<float>& signal, const MelConfig& cfg) {
  const ComplexMatrix spec = Stft(signal, cfg);
  Eigen::VectorXd total = spec.cwiseAbs().colwise().sum().transpose();
  Eigen::Index best;
  total.maxCoeff(&best);
  return static_cast<int>(best);
}

TEST(MelConfigTest, Validation) {
  MelConfig c;
  EXPECT_NO_THROW(c.Validate());
  c.hop_length = 2048;
  EXPECT_THROW(c.Validate(), ConfigError);
  c = MelConfig();
  c.fmax = 20000;
  EXPECT_THROW(c.Validate(), ConfigError);
  c = MelConfig();
  c.log_floor = 0;
  EXPECT_THROW(c.Validate(), ConfigError);
}

TEST(MelConfigTest, JsonRoundTripRejectsUnknownKeys) {
  MelConfig c;
  c.n_mels = 40;
  c.fmax = 7600;
  nlohmann::json j = c;
  EXPECT_EQ(j.get<MelConfig>(), c);
  j["bogus"] = 1;
  EXPECT_THROW(j.get<MelConfig>(), ConfigError);
}

TEST(MelScaleTest, MatchesDefinition) {
  for (double hz : {0.0, 200.0, 999.0, 1000.0, 4000.0, 8000.0}) {
    EXPECT_NEAR(HzToMel(hz), OracleHzToMel(hz), 1e-9);
    EXPECT_NEAR(MelToHz(HzToMel(hz)), hz, 1e-6);
  }
  EXPECT_NEAR(HzToMel(1000.0), 15.0, 1e-12);
}

TEST(MelScaleTest, FilterbankMatchesOracle) {
  const MelConfig cfg;
  const RealMatrix fb = MelFilterbank(cfg);
  ASSERT_EQ(fb.rows(), cfg.n_mels);
  ASSERT_EQ(fb.cols(), cfg.n_bins());
  for (int m = 0; m < cfg.n_mels; ++m) {
    for (int k = 0; k < cfg.n_bins(); ++k) {
      const double hz = static_cast<double>(k) * cfg.sample_rate / cfg.n_fft;
      ASSERT_NEAR(fb(m, k), OracleFilterWeight(cfg, m, hz), 1e-9) << m << "," << k;
    }
  }
}

TEST(MelSpectrogramTest, FrameCountFormula) {
  MelConfig cfg;
  cfg.n_mels = 20;
  Rng rng(17);
  EXPECT_EQ(ComputeMelSpectrogram(Tone(100, 22050), cfg).n_frames(), 87);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + static_cast<int>(rng.Uniform(6000));
    const MelSpectrogram mel = ComputeMelSpectrogram(Tone(300, n), cfg);
    EXPECT_EQ(mel.n_frames(), 1 + n / cfg.hop_length) << n;
    EXPECT_EQ(mel.n_mels(), cfg.n_mels);
  }
}

TEST(MelSpectrogramTest, SilenceHitsFloor) {
  Waveform silence;
  silence.samples.assign(5000, 0.0f);
  const MelSpectrogram mel = ComputeMelSpectrogram(silence, MelConfig());
  const float floor = std::log(1e-5f);
  for (Eigen::Index i = 0; i < mel.frames.size(); ++i) {
    ASSERT_NEAR(mel.frames.data()[i], floor, 1e-5);
  }
  EXPECT_NEAR(floor, -11.5129, 1e-4);
}

TEST(MelSpectrogramTest, ToneLandsInOracleBin) {
  const MelConfig cfg;
  const MelSpectrogram mel = ComputeMelSpectrogram(Tone(440, 22050), cfg);
  const int expected = OraclePeakMelBin(440, cfg);
  for (int t = 4; t < mel.n_frames() - 4; ++t) {
    Eigen::Index best;
    mel.frames.row(t).maxCoeff(&best);
    ASSERT_EQ(best, expected) << "frame " << t;
  }
}

TEST(MelSpectrogramTest, ValuesBoundedAndMonotoneInGain) {
  MelConfig cfg;
  cfg.n_mels = 40;
  Rng rng(2);
  Waveform w;
  w.samples.resize(4000);
  for (auto& s : w.samples) s = static_cast<float>(0.2 * rng.Normal());
  for (int i = 0; i < 500; ++i) w.samples[i] = 0.0f;
  Waveform louder = w;
  for (auto& s : louder.samples) s *= 2.0f;
  const MelSpectrogram a = ComputeMelSpectrogram(w, cfg);
  const MelSpectrogram b = ComputeMelSpectrogram(louder, cfg);
  const float floor = static_cast<float>(std::log(cfg.log_floor));
  for (Eigen::Index i = 0; i < a.frames.size(); ++i) {
    ASSERT_GE(a.frames.data()[i], floor - 1e-6f);
    ASSERT_GE(b.frames.data()[i], a.frames.data()[i]);
  }
}

TEST(MelSpectrogramTest, RateMismatchIsConfigError) {
  EXPECT_THROW(ComputeMelSpectrogram(Tone(440, 1000, 16000), MelConfig()), ConfigError);
}

TEST(StftTest, InverseRecoversSignal) {
  MelConfig cfg;
  const Waveform w = Tone(523.25, 8192);
  const std::vector<float> back = Istft(Stft(w.samples, cfg), cfg);
  ASSERT_EQ(back.size(), static_cast<size_t>(8192 / cfg.hop_length) * cfg.hop_length);
  for (size_t i = 0; i < back.size(); ++i) ASSERT_NEAR(back[i], w.samples[i], 1e-4);
}

TEST(MelIoTest, RoundTripIsBitExact) {
  MelConfig cfg;
  cfg.n_mels = 13;
  cfg.hop_length = 200;
  cfg.sample_rate = 16000;
  MelSpectrogram mel;
  mel.config = cfg;
  mel.frames.resize(9, 13);
  Rng rng(4);
  for (Eigen::Index i = 0; i < mel.frames.size(); ++i) {
    mel.frames.data()[i] = static_cast<float>(rng.Normal() * 3.0);
  }
  mel.frames(0, 0) = -0.0f;
  const auto dir = testing_util::TempDir("mel_io");
  WriteMel(mel, dir / "a.mel");
  const MelSpectrogram back = ReadMel(dir / "a.mel");
  ASSERT_EQ(back.n_frames(), 9);
  ASSERT_EQ(back.n_mels(), 13);
  EXPECT_EQ(std::memcmp(back.frames.data(), mel.frames.data(), sizeof(float) * 9 * 13), 0);
  EXPECT_EQ(back.config.sample_rate, 16000);
  EXPECT_EQ(back.config.hop_length, 200);
  EXPECT_EQ(back.config.n_mels, 13);
}

TEST(MelIoTest, RejectsMalformedFiles) {
  MelSpectrogram mel;
  mel.frames = MelMatrix::Zero(3, 4);
  mel.config.n_mels = 4;
  std::string bytes = EncodeMel(mel);
  EXPECT_EQ(bytes.substr(0, 4), "MEL1");
  std::string bad = bytes;
  bad.replace(0, 4, "XXXX");
  EXPECT_THROW(DecodeMel(bad), FormatError);
  EXPECT_THROW(DecodeMel(bytes.substr(0, bytes.size() - 4)), FormatError);
  EXPECT_THROW(DecodeMel(bytes + "pad!"), FormatError);
  EXPECT_THROW(DecodeMel("MEL"), FormatError);
}

TEST(WavTest, PcmRoundTrip) {
  const auto dir = testing_util::TempDir("wav");
  const Waveform w = Tone(220, 1000, 16000, 0.9);
  WriteWav(dir / "a.wav", w);
  const WavData data = ReadWav(dir / "a.wav");
  EXPECT_EQ(data.sample_rate, 16000);
  ASSERT_EQ(data.channels.size(), 1u);
  ASSERT_EQ(data.channels[0].size(), 1000u);
  for (size_t i = 0; i < 1000; ++i) ASSERT_NEAR(data.channels[0][i], w.samples[i], 0.5 / 32768 + 1e-7);
}

TEST(WavTest, StereoOppositeChannelsCancel) {
  const auto dir = testing_util::TempDir("wav_stereo");
  const Waveform v = Tone(300, 2000);
  std::vector<float> neg(v.samples);
  for (auto& s : neg) s = -s;
  WriteWav(dir / "s.wav", {v.samples, neg}, kDefaultSampleRate);
  const Waveform mono = LoadWav(dir / "s.wav");
  ASSERT_EQ(mono.samples.size(), 2000u);
  for (float s : mono.samples) ASSERT_EQ(s, 0.0f);
}

TEST(WavTest, ResamplesPreservingDuration) {
  const auto dir = testing_util::TempDir("wav_rate");
  WriteWav(dir / "hi.wav", Tone(440, 44100, 44100));
  const Waveform w = LoadWav(dir / "hi.wav", 22050);
  EXPECT_EQ(w.sample_rate, 22050);
  EXPECT_EQ(w.samples.size(), 22050u);
  EXPECT_NEAR(w.DurationSeconds(), 1.0, 1e-9);
  MelConfig cfg;
  EXPECT_EQ(SpectralPeakBin(w.samples, cfg), SpectralPeakBin(Tone(440, 22050).samples, cfg));
}

TEST(WavTest, ResampleLength) {
  std::vector<float> x(1000, 0.25f);
  EXPECT_EQ(Resample(x, 16000, 22050).size(), 1378u);
  EXPECT_EQ(Resample(x, 22050, 22050), x);
}

TEST(WavTest, ErrorsOnBadInput) {
  const auto dir = testing_util::TempDir("wav_bad");
  WriteWav(dir / "empty.wav", {std::vector<float>{}}, kDefaultSampleRate);
  EXPECT_THROW(LoadWav(dir / "empty.wav"), ValidationError);
  WriteFileAtomic(dir / "junk.wav", "definitely not a wav file");
  EXPECT_THROW(LoadWav(dir / "junk.wav"), IoError);
  EXPECT_THROW(LoadWav(dir / "missing.wav"), IoError);
}

TEST(GriffinLimTest, LengthWithinOverlapAddBound) {
  const MelConfig cfg;
  const MelSpectrogram mel = ComputeMelSpectrogram(Tone(440, 22050), cfg);
  ASSERT_EQ(mel.n_frames(), 87);
  const Waveform w = GriffinLim(mel, 4);
  const long n = static_cast<long>(w.samples.size());
  EXPECT_GE(n, 86 * 256 - 1024);
  EXPECT_LE(n, 86 * 256 + 1024);
  EXPECT_EQ(w.sample_rate, cfg.sample_rate);
}

TEST(GriffinLimTest, RecoversTonePitch) {
  const MelConfig cfg;
  const MelSpectrogram mel = ComputeMelSpectrogram(Tone(440, 22050), cfg);
  const Waveform w = GriffinLim(mel, 32);
  const double expected = 440.0 * cfg.n_fft / cfg.sample_rate;
  EXPECT_LE(std::abs(SpectralPeakBin(w.samples, cfg) - expected), 1.0);
}

TEST(GriffinLimTest, MoreIterationsDoNotIncreaseError) {
  MelConfig cfg;
  const Waveform tone = Tone(440, 11025);
  const RealMatrix target = Stft(tone.samples, cfg).cwiseAbs();
  const double e1 = SpectralConvergence(GriffinLimFromMagnitude(target, cfg, 1), target, cfg);
  const double e32 = SpectralConvergence(GriffinLimFromMagnitude(target, cfg, 32), target, cfg);
  EXPECT_LE(e32, e1);
  EXPECT_THROW(GriffinLimFromMagnitude(target, cfg, 0), ConfigError);
}

TEST(GriffinLimTest, Deterministic) {
  MelConfig cfg;
  cfg.n_mels = 40;
  const MelSpectrogram mel = ComputeMelSpectrogram(Tone(300, 6000), cfg);
  EXPECT_EQ(GriffinLim(mel, 3).samples, GriffinLim(mel, 3).samples);
}

}  // namespace
}  // namespace ctts
