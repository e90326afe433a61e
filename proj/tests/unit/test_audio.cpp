// Copyright 2026 The hf0 Authors
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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "hf0/audio.hpp"
#include "hf0/error.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using hf0::AudioBuffer;

namespace {

std::vector<double> sine(double f, double fs, std::size_t n, double amp = 0.5) {
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = amp * std::sin(2.0 * M_PI * f * i / fs);
  return x;
}

}  // namespace

TEST(AudioBuffer, RejectsBadRateAndNonFiniteSamples) {
  EXPECT_THROW(AudioBuffer({0.0}, 0), hf0::RangeError);
  EXPECT_THROW(AudioBuffer({0.0}, -8000), hf0::RangeError);
  EXPECT_THROW(AudioBuffer({0.0, NAN}, 16000), hf0::RangeError);
  EXPECT_THROW(AudioBuffer({INFINITY}, 16000), hf0::RangeError);
  EXPECT_NO_THROW(AudioBuffer({}, 16000));
}

TEST(LoadWav, Pcm16FullScaleSample) {
  testutil::TempDir dir;
  std::vector<std::uint8_t> payload;
  testutil::put_u16(payload, 32767);
  testutil::write_bytes(dir / "a.wav", testutil::wav_bytes(1, 1, 22050, 16, payload));
  const AudioBuffer b = hf0::load_wav(dir / "a.wav");
  ASSERT_EQ(b.size(), 1u);
  EXPECT_EQ(b.samples()[0], 32767.0 / 32768.0);
  EXPECT_EQ(b.sample_rate(), 22050);
}

TEST(LoadWav, StereoIsAveraged) {
  testutil::TempDir dir;
  testutil::write_bytes(dir / "s.wav",
                        testutil::wav_bytes(3, 2, 16000, 32, testutil::floats_le({0.5f, -0.5f, 0.25f, 0.75f})));
  const AudioBuffer b = hf0::load_wav(dir / "s.wav");
  ASSERT_EQ(b.size(), 2u);
  EXPECT_EQ(b.samples()[0], 0.0);
  EXPECT_EQ(b.samples()[1], 0.5);
}

TEST(LoadWav, CompressedFormatIsRejectedByName) {
  testutil::TempDir dir;
  testutil::write_bytes(dir / "c.wav", testutil::wav_bytes(0x55, 1, 16000, 16, {0, 0}));
  try {
    hf0::load_wav(dir / "c.wav");
    FAIL() << "expected FormatError";
  } catch (const hf0::FormatError& e) {
    EXPECT_NE(std::string(e.what()).find("unsupported format"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("audio_format"), std::string::npos);
  }
}

TEST(LoadWav, UnsupportedBitDepthNamesTheField) {
  testutil::TempDir dir;
  testutil::write_bytes(dir / "b.wav", testutil::wav_bytes(1, 1, 16000, 24, {0, 0, 0}));
  try {
    hf0::load_wav(dir / "b.wav");
    FAIL() << "expected FormatError";
  } catch (const hf0::FormatError& e) {
    EXPECT_NE(std::string(e.what()).find("bits_per_sample"), std::string::npos);
  }
}

TEST(LoadWav, MissingAndNonRiffFiles) {
  testutil::TempDir dir;
  EXPECT_THROW(hf0::load_wav(dir / "nope.wav"), hf0::IoError);
  testutil::write_bytes(dir / "junk.wav", {'h', 'e', 'l', 'l', 'o'});
  EXPECT_THROW(hf0::load_wav(dir / "junk.wav"), hf0::FormatError);
}

TEST(WriteWav, RoundTripFloatAndPcm) {
  testutil::TempDir dir;
  const AudioBuffer src(sine(440.0, 16000.0, 400), 16000);
  hf0::write_wav(src, dir / "f.wav", hf0::WavEncoding::kFloat32);
  hf0::write_wav(src, dir / "p.wav", hf0::WavEncoding::kPcm16);
  const AudioBuffer f = hf0::load_wav(dir / "f.wav");
  const AudioBuffer p = hf0::load_wav(dir / "p.wav");
  ASSERT_EQ(f.size(), src.size());
  ASSERT_EQ(p.size(), src.size());
  for (std::size_t i = 0; i < src.size(); ++i) {
    EXPECT_NEAR(f.samples()[i], src.samples()[i], 1e-7);
    EXPECT_NEAR(p.samples()[i], src.samples()[i], 1.0 / 32768.0);
  }
}

TEST(Resample, SameRateIsBitIdentical) {
  std::mt19937 rng(3);
  std::normal_distribution<double> nd;
  std::vector<double> x(1234);
  for (auto& v : x) v = nd(rng);
  const AudioBuffer b(x, 44100);
  const AudioBuffer r = hf0::resample(b, 44100);
  EXPECT_EQ(r.sample_rate(), 44100);
  EXPECT_EQ(r.samples(), b.samples());
}

TEST(Resample, OneKilohertzToneKeepsFrequencyAndAmplitude) {
  const AudioBuffer b(sine(1000.0, 48000.0, 48000), 48000);
  const AudioBuffer r = hf0::resample(b, 16000);
  EXPECT_EQ(r.sample_rate(), 16000);
  EXPECT_EQ(r.size(), 16000u);
  // 1600-sample window from the middle: bins are 10 Hz apart.
  std::vector<double> mid(r.samples().begin() + 8000, r.samples().begin() + 9600);
  EXPECT_EQ(oracle::dominant_bin(mid), 100u);
  EXPECT_NEAR(oracle::tone_amplitude(mid, 16000.0, 1000.0), 0.5, 0.005);
}

TEST(Resample, ToneNearNewNyquistIsAttenuated) {
  const AudioBuffer b(sine(7900.0, 48000.0, 48000), 48000);
  const AudioBuffer r = hf0::resample(b, 16000);
  std::vector<double> mid(r.samples().begin() + 4000, r.samples().begin() + 12000);
  const double amp = oracle::tone_amplitude(mid, 16000.0, 7900.0);
  EXPECT_LE(20.0 * std::log10(amp / 0.5), -20.0);
}

TEST(Resample, DurationPreservedWithinOneSample) {
  for (int from : {8000, 11025, 22050, 44100, 48000}) {
    for (int to : {16000, 8000, 48000}) {
      const AudioBuffer b(std::vector<double>(12345, 0.1), from);
      const AudioBuffer r = hf0::resample(b, to);
      EXPECT_NEAR(r.duration_seconds(), b.duration_seconds(), 1.0 / to) << from << "->" << to;
    }
  }
  EXPECT_THROW(hf0::resample(AudioBuffer({0.0}, 16000), 0), hf0::RangeError);
}

TEST(Resample, UpsamplingKeepsTone) {
  const AudioBuffer b(sine(300.0, 8000.0, 8000), 8000);
  const AudioBuffer r = hf0::resample(b, 16000);
  std::vector<double> mid(r.samples().begin() + 4000, r.samples().begin() + 12000);
  EXPECT_NEAR(oracle::tone_amplitude(mid, 16000.0, 300.0), 0.5, 0.005);
}

TEST(MixNoise, ZeroDbWithMatchedNoiseHasUnitGain) {
  const std::vector<double> clean = sine(200.0, 16000.0, 1600);
  std::mt19937 rng(5);
  std::normal_distribution<double> nd;
  std::vector<double> noise(2000);
  for (auto& v : noise) v = nd(rng);
  const double scale = hf0::rms(clean) / hf0::rms(std::span<const double>(noise).first(clean.size()));
  for (auto& v : noise) v *= scale;
  const auto mix = hf0::mix_noise(AudioBuffer(clean, 16000), AudioBuffer(noise, 16000), 0.0);
  EXPECT_NEAR(mix.gain, 1.0, 1e-12);
}

TEST(MixNoise, TwentyDbIsTenfoldAmplitude) {
  const std::vector<double> clean = sine(200.0, 16000.0, 1600);
  const std::vector<double> noise = sine(3111.0, 16000.0, 1600, 0.9);
  const auto mix = hf0::mix_noise(AudioBuffer(clean, 16000), AudioBuffer(noise, 16000), 20.0);
  std::vector<double> added(clean.size());
  for (std::size_t i = 0; i < clean.size(); ++i) added[i] = mix.gain * noise[i];
  EXPECT_NEAR(hf0::rms(added), hf0::rms(clean) / 10.0, 1e-12);
}

TEST(MixNoise, MeasuredSnrAndExactSuperposition) {
  const std::vector<double> clean = sine(200.0, 16000.0, 16000);
  std::mt19937 rng(11);
  std::normal_distribution<double> nd;
  std::vector<double> noise(20000);
  for (auto& v : noise) v = nd(rng);
  const auto mix = hf0::mix_noise(AudioBuffer(clean, 16000), AudioBuffer(noise, 16000), 5.0);
  ASSERT_EQ(mix.mixture.size(), clean.size());
  double pc = 0.0, pn = 0.0;
  for (std::size_t i = 0; i < clean.size(); ++i) {
    const double n = mix.gain * noise[i];
    EXPECT_EQ(mix.mixture.samples()[i], clean[i] + n);
    pc += clean[i] * clean[i];
    pn += n * n;
  }
  EXPECT_NEAR(10.0 * std::log10(pc / pn), 5.0, 0.01);
}

TEST(MixNoise, Errors) {
  const AudioBuffer clean(sine(200.0, 16000.0, 100), 16000);
  EXPECT_THROW(hf0::mix_noise(clean, AudioBuffer(std::vector<double>(100, 0.1), 8000), 0.0),
               hf0::DimensionError);
  EXPECT_THROW(hf0::mix_noise(clean, AudioBuffer(std::vector<double>(50, 0.1), 16000), 0.0),
               hf0::DimensionError);
  EXPECT_THROW(hf0::mix_noise(clean, AudioBuffer(std::vector<double>(100, 0.0), 16000), 0.0),
               hf0::RangeError);
  EXPECT_THROW(hf0::mix_noise(AudioBuffer(std::vector<double>(100, 0.0), 16000), clean, 0.0),
               hf0::RangeError);
}
