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

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "hf0/classifier.hpp"
#include "hf0/decoder.hpp"
#include "hf0/dsp.hpp"
#include "hf0/filterbank.hpp"

namespace {

std::vector<double> sawtooth(double f, std::size_t n) {
  std::vector<double> x(n, 0.0);
  for (int k = 1; k * f < 7600.0; ++k) {
    for (std::size_t i = 0; i < n; ++i) x[i] += 0.3 * std::sin(2.0 * M_PI * k * f * i / 16000.0) / k;
  }
  return x;
}

// Random weights with the default 5 x 320 input and the given channel count.
hf0::ModelWeights random_model(std::size_t channels) {
  std::mt19937 rng(1);
  std::normal_distribution<double> nd(0.0, 0.05);
  hf0::ModelWeights w;
  auto conv = [&](std::size_t cin, std::size_t cout) {
    hf0::nn::Conv2dParams p;
    p.in_channels = cin;
    p.out_channels = cout;
    p.kernel.resize(9 * cin * cout);
    for (auto& v : p.kernel) v = nd(rng);
    p.bias.assign(cout, 0.0);
    return p;
  };
  auto bn = [](std::size_t ch) {
    hf0::nn::BatchNormParams p;
    p.gamma.assign(ch, 1.0);
    p.beta.assign(ch, 0.0);
    p.mean.assign(ch, 0.0);
    p.var.assign(ch, 1.0);
    return p;
  };
  w.conv1 = conv(1, channels);
  w.bn1 = bn(channels);
  w.conv2 = conv(channels, channels);
  w.bn2 = bn(channels);
  w.dense.in_features = w.flatten_dim();
  w.dense.out_features = hf0::kNumClasses;
  w.dense.weight.resize(w.dense.in_features * w.dense.out_features);
  for (auto& v : w.dense.weight) v = nd(rng);
  w.dense.bias.assign(hf0::kNumClasses, 0.0);
  return w;
}

}  // namespace

static void BM_Autocorr(benchmark::State& state) {
  const auto x = sawtooth(150.0, 800);
  for (auto _ : state) benchmark::DoNotOptimize(hf0::autocorr(x));
}
BENCHMARK(BM_Autocorr);

static void BM_DoubleAutocorr(benchmark::State& state) {
  const auto r = hf0::autocorr(sawtooth(150.0, 800));
  for (auto _ : state) benchmark::DoNotOptimize(hf0::double_autocorr(r, 401));
}
BENCHMARK(BM_DoubleAutocorr);

static void BM_ApplyFilterOneSecond(benchmark::State& state) {
  const auto x = sawtooth(150.0, 16000);
  const auto f = hf0::design_band_filter(hf0::BandLabel::kS3);
  for (auto _ : state) benchmark::DoNotOptimize(hf0::apply_filter(f, x));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(x.size()));
}
BENCHMARK(BM_ApplyFilterOneSecond);

static void BM_PredictFrame(benchmark::State& state) {
  const auto w = random_model(static_cast<std::size_t>(state.range(0)));
  const auto series = hf0::frame_signal(hf0::AudioBuffer(sawtooth(150.0, 4000), 16000));
  const auto x = hf0::build_input(series, 10, w.input_lags);
  for (auto _ : state) benchmark::DoNotOptimize(hf0::predict(w, x));
}
BENCHMARK(BM_PredictFrame)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

static void BM_DecodeOneSecond(benchmark::State& state) {
  const auto x = sawtooth(150.0, 16000);
  const auto g = hf0::frame_geometry(x.size(), 16000);
  const std::vector<hf0::BandLabel> labels(g.num_frames, hf0::BandLabel::kS3);
  const hf0::AudioBuffer buf(x, 16000);
  for (auto _ : state) benchmark::DoNotOptimize(hf0::decode_pitch(buf, labels));
}
BENCHMARK(BM_DecodeOneSecond)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
