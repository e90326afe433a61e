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
#include <fstream>
#include <sstream>

#include "hf0/audio.hpp"
#include "hf0/cli.hpp"
#include "hf0/metrics.hpp"
#include "hf0/pitch_track.hpp"
#include "signals.hpp"
#include "test_util.hpp"

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run hf0_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "hf0");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = hf0::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string value_of(const std::string& text, const std::string& key) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind(key + "=", 0) == 0) return line.substr(key.size() + 1);
  }
  return "";
}

hf0::PitchTrack constant_truth(std::size_t samples, double f0) {
  return signals::reference(samples, [f0](double) { return f0; });
}

double median_voiced_f0(const hf0::PitchTrack& t) {
  std::vector<double> f;
  for (const auto& e : t.entries) {
    if (e.voiced) f.push_back(e.f0);
  }
  if (f.empty()) return 0.0;
  std::nth_element(f.begin(), f.begin() + f.size() / 2, f.end());
  return f[f.size() / 2];
}

}  // namespace

TEST(Cli, ExtractWithOracleTruth) {
  testutil::TempDir dir;
  hf0::write_wav(hf0::AudioBuffer(signals::tone(220.0, 32000), 16000), dir / "tone.wav");
  hf0::write_pitch_track(constant_truth(32000, 220.0), dir / "truth.csv");
  const auto r = hf0_cli({"extract", (dir / "tone.wav").string(), "--oracle-truth",
                          (dir / "truth.csv").string(), "--out", (dir / "est.csv").string(),
                          "--diagnostics"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("frames=200"), std::string::npos) << r.out;
  const auto est = hf0::read_pitch_track(dir / "est.csv");
  EXPECT_NEAR(median_voiced_f0(est), 220.0, 0.5);
  EXPECT_TRUE(std::filesystem::exists(dir / "est.diag.csv"));

  const auto ev = hf0_cli({"evaluate", (dir / "est.csv").string(), (dir / "truth.csv").string()});
  ASSERT_EQ(ev.code, 0) << ev.err;
  EXPECT_EQ(value_of(ev.out, "oa"), "1");
}

TEST(Cli, ExtractResamplesOtherRates) {
  testutil::TempDir dir;
  std::vector<double> x(48000 * 2);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = 0.5 * std::sin(2.0 * M_PI * 330.0 * i / 48000.0);
  hf0::write_wav(hf0::AudioBuffer(x, 48000), dir / "tone48k.wav");
  hf0::write_pitch_track(constant_truth(32000, 330.0), dir / "truth.csv");
  const auto r = hf0_cli({"extract", (dir / "tone48k.wav").string(), "--oracle-truth",
                          (dir / "truth.csv").string(), "--out", (dir / "est.csv").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(median_voiced_f0(hf0::read_pitch_track(dir / "est.csv")), 330.0, 0.5);
}

TEST(Cli, ExtractWithFixtureModel) {
  testutil::TempDir dir;
  std::vector<double> x(32000, 0.0);
  for (int k = 1; k <= 15; ++k) {
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += 0.3 * std::sin(2.0 * M_PI * 250.0 * k * i / 16000.0) / k;
  }
  hf0::write_wav(hf0::AudioBuffer(x, 16000), dir / "voice.wav");
  const auto r = hf0_cli({"extract", (dir / "voice.wav").string(), "--model",
                          testutil::data_path("fixture_model.hf0w"), "--out", (dir / "est.csv").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(median_voiced_f0(hf0::read_pitch_track(dir / "est.csv")), 250.0, 2.5);
}

TEST(Cli, UsageErrors) {
  testutil::TempDir dir;
  hf0::write_wav(hf0::AudioBuffer(signals::tone(220.0, 3200), 16000), dir / "tone.wav");
  EXPECT_EQ(hf0_cli({"extract", (dir / "tone.wav").string(), "--out", (dir / "o.csv").string()}).code, 2);
  EXPECT_EQ(hf0_cli({}).code, 2);
  EXPECT_EQ(hf0_cli({"frobnicate"}).code, 2);
  EXPECT_EQ(hf0_cli({"evaluate", (dir / "nope.csv").string(), (dir / "nope.csv").string()}).code, 2);
  EXPECT_EQ(hf0_cli({"--help"}).code, 0);
}

TEST(Cli, ModuleErrorsExitOne) {
  testutil::TempDir dir;
  hf0::write_wav(hf0::AudioBuffer(signals::tone(220.0, 3200), 16000), dir / "tone.wav");
  testutil::write_bytes(dir / "bad.csv", {'x', '\n'});
  const auto r = hf0_cli({"extract", (dir / "tone.wav").string(), "--oracle-truth",
                          (dir / "bad.csv").string(), "--out", (dir / "o.csv").string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.err.rfind("error: ", 0), 0u) << r.err;
}

TEST(Cli, EvaluateDoubledAndReport) {
  testutil::TempDir dir;
  hf0::PitchTrack ref = constant_truth(16000, 150.0), est = ref;
  for (auto& e : est.entries) e.f0 *= 2.0;
  hf0::write_pitch_track(ref, dir / "ref.csv");
  hf0::write_pitch_track(est, dir / "est.csv");
  const auto r = hf0_cli({"evaluate", (dir / "est.csv").string(), (dir / "ref.csv").string(),
                          "--report", (dir / "report.csv").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(value_of(r.out, "rca"), "1");
  EXPECT_EQ(value_of(r.out, "rpa"), "0");
  std::ifstream in(dir / "report.csv");
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header + "\n", hf0::csv_header());
}

TEST(Cli, EvaluateCorpusDirectories) {
  testutil::TempDir dir;
  std::filesystem::create_directories(dir / "est");
  std::filesystem::create_directories(dir / "ref");
  std::vector<hf0::EvalReport> want;
  const double factors[] = {1.0, 1.01, 2.0};
  for (int i = 0; i < 3; ++i) {
    hf0::PitchTrack ref = constant_truth(8000 + 1600 * i, 120.0 + 40 * i), est = ref;
    for (std::size_t t = 0; t < est.size(); t += 2) {
      if (est.entries[t].voiced) est.entries[t].f0 *= factors[i];
    }
    const std::string name = "f" + std::to_string(i) + ".csv";
    hf0::write_pitch_track(ref, dir / "ref" / name);
    hf0::write_pitch_track(est, dir / "est" / name);
    want.push_back(hf0::evaluate(hf0::read_pitch_track(dir / "est" / name),
                                 hf0::read_ground_truth(dir / "ref" / name)));
  }
  const auto r = hf0_cli({"evaluate", (dir / "est").string(), (dir / "ref").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  for (int i = 0; i < 3; ++i) {
    EXPECT_NE(r.out.find(hf0::csv_row("f" + std::to_string(i) + ".csv", want[i])), std::string::npos)
        << r.out;
  }
  EXPECT_NE(r.out.find(hf0::to_key_value(hf0::summarize(want))), std::string::npos) << r.out;
}

TEST(Cli, MixNoise) {
  testutil::TempDir dir;
  const auto clean = signals::tone(200.0, 8000, 0.0, 0.5);
  auto noise = signals::tone(1234.0, 8000, 0.3, 0.5);
  hf0::write_wav(hf0::AudioBuffer(clean, 16000), dir / "clean.wav");
  hf0::write_wav(hf0::AudioBuffer(noise, 16000), dir / "noise.wav");

  auto r = hf0_cli({"mix-noise", (dir / "clean.wav").string(), (dir / "noise.wav").string(), "0",
                    (dir / "mix.wav").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(std::stod(value_of(r.out, "noise_gain")), 1.0, 1e-6);
  auto mix = hf0::load_wav(dir / "mix.wav");
  const auto c32 = hf0::load_wav(dir / "clean.wav"), n32 = hf0::load_wav(dir / "noise.wav");
  for (std::size_t i = 0; i < mix.size(); ++i) {
    EXPECT_NEAR(mix.view()[i], c32.view()[i] + n32.view()[i], 1e-6);
  }

  r = hf0_cli({"mix-noise", (dir / "clean.wav").string(), (dir / "noise.wav").string(), "60",
               (dir / "mix60.wav").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(std::stod(value_of(r.out, "noise_gain")), 1e-3, 1e-8);
  mix = hf0::load_wav(dir / "mix60.wav");
  for (std::size_t i = 0; i < mix.size(); ++i) EXPECT_NEAR(mix.view()[i], c32.view()[i], 1e-3);

  hf0::write_wav(hf0::AudioBuffer(noise, 8000), dir / "noise8k.wav");
  r = hf0_cli({"mix-noise", (dir / "clean.wav").string(), (dir / "noise8k.wav").string(), "0",
               (dir / "bad.wav").string()});
  EXPECT_EQ(r.code, 1);
}

TEST(Cli, InspectWeights) {
  const auto r = hf0_cli({"inspect-weights", testutil::data_path("fixture_model.hf0w")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(value_of(r.out, "parameter_count"), value_of(r.out, "tensor_values"));
  EXPECT_EQ(value_of(r.out, "flatten_dim"), std::to_string(2 * 160 * 64));
  EXPECT_NE(r.out.find("dense.weight [20480, 9] 184320"), std::string::npos) << r.out;

  testutil::TempDir dir;
  testutil::write_bytes(dir / "corrupt.hf0w", {'H', 'F', '0', 'W', 1, 0});
  const auto bad = hf0_cli({"inspect-weights", (dir / "corrupt.hf0w").string()});
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.err.find("unexpected end of file"), std::string::npos) << bad.err;
}
