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

#include "hf0/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace hf0 {

std::size_t ModelWeights::flatten_dim() const {
  return (context / 2) * (input_lags / 2) * conv2.out_channels;
}

std::size_t ModelWeights::parameter_count() const {
  auto bn = [](const nn::BatchNormParams& p) {
    return p.gamma.size() + p.beta.size() + p.mean.size() + p.var.size() + 1;
  };
  return conv1.kernel.size() + conv1.bias.size() + bn(bn1) + conv2.kernel.size() +
         conv2.bias.size() + bn(bn2) + dense.weight.size() + dense.bias.size();
}

namespace {

using Kind = WeightFileError::Kind;

void expect_size(const std::string& name, std::size_t got, std::size_t want) {
  if (got != want) {
    throw WeightFileError(Kind::kShapeMismatch, name + ": expected " + std::to_string(want) +
                                                    " values, found " + std::to_string(got));
  }
}

void check_finite(const std::string& name, const std::vector<double>& v) {
  for (double x : v) {
    if (!std::isfinite(x)) throw WeightFileError(Kind::kNonFinite, name + ": non-finite value");
  }
}

void check_bn(const std::string& prefix, const nn::BatchNormParams& p, std::size_t channels) {
  expect_size(prefix + ".gamma", p.gamma.size(), channels);
  expect_size(prefix + ".beta", p.beta.size(), channels);
  expect_size(prefix + ".mean", p.mean.size(), channels);
  expect_size(prefix + ".var", p.var.size(), channels);
  check_finite(prefix + ".gamma", p.gamma);
  check_finite(prefix + ".beta", p.beta);
  check_finite(prefix + ".mean", p.mean);
  check_finite(prefix + ".var", p.var);
  if (!std::isfinite(p.eps)) throw WeightFileError(Kind::kNonFinite, prefix + ".eps: non-finite");
  if (!(p.eps > 0.0)) throw WeightFileError(Kind::kInvariant, prefix + ".eps must be positive");
  for (double v : p.var) {
    if (!(v > 0.0)) {
      throw WeightFileError(Kind::kInvariant, prefix + ".var must be strictly positive");
    }
  }
}

void check_conv(const std::string& prefix, const nn::Conv2dParams& p, std::size_t in_ch) {
  if (p.kernel_h != 3 || p.kernel_w != 3) {
    throw WeightFileError(Kind::kShapeMismatch, prefix + ": kernel must be 3x3");
  }
  if (p.in_channels != in_ch) {
    throw WeightFileError(Kind::kShapeMismatch,
                          prefix + ": expected " + std::to_string(in_ch) + " input channels");
  }
  if (p.out_channels == 0) {
    throw WeightFileError(Kind::kShapeMismatch, prefix + ": zero output channels");
  }
  expect_size(prefix + ".kernel", p.kernel.size(), 9 * p.in_channels * p.out_channels);
  expect_size(prefix + ".bias", p.bias.size(), p.out_channels);
  check_finite(prefix + ".kernel", p.kernel);
  check_finite(prefix + ".bias", p.bias);
}

}  // namespace

void ModelWeights::validate() const {
  if (context != kContextFrames) {
    throw WeightFileError(Kind::kShapeMismatch,
                          "context must be " + std::to_string(kContextFrames) + " frames");
  }
  if (input_lags < 2) throw WeightFileError(Kind::kShapeMismatch, "input_lags must be >= 2");
  check_conv("conv1", conv1, 1);
  check_bn("bn1", bn1, conv1.out_channels);
  check_conv("conv2", conv2, conv1.out_channels);
  check_bn("bn2", bn2, conv2.out_channels);
  if (dense.in_features != flatten_dim() || dense.out_features != kNumClasses) {
    throw WeightFileError(Kind::kShapeMismatch,
                          "dense.weight must be [" + std::to_string(flatten_dim()) + ", " +
                              std::to_string(kNumClasses) + "]");
  }
  expect_size("dense.weight", dense.weight.size(), dense.in_features * dense.out_features);
  expect_size("dense.bias", dense.bias.size(), kNumClasses);
  check_finite("dense.weight", dense.weight);
  check_finite("dense.bias", dense.bias);
}

std::vector<double> frame_feature(std::span<const double> frame, std::size_t input_lags) {
  return normalize_acf(autocorr(frame, input_lags)).values;
}

std::vector<double> frame_features(const FrameSeries& series, std::size_t input_lags) {
  if (input_lags > series.frame_len()) {
    throw DimensionError("input_lags exceeds the frame length");
  }
  std::vector<double> out(series.size() * input_lags);
  for (std::size_t t = 0; t < series.size(); ++t) {
    const auto row = frame_feature(series.frame(t), input_lags);
    std::copy(row.begin(), row.end(), out.begin() + static_cast<std::ptrdiff_t>(t * input_lags));
  }
  return out;
}

FeatureInput assemble_input(std::span<const double> features, std::size_t num_frames,
                            std::size_t t, std::size_t input_lags) {
  if (t >= num_frames) throw RangeError("frame index out of range");
  FeatureInput in;
  in.input_lags = input_lags;
  in.grid.resize(kContextFrames * input_lags);
  const auto last = static_cast<std::ptrdiff_t>(num_frames) - 1;
  for (std::size_t r = 0; r < kContextFrames; ++r) {
    const std::ptrdiff_t src = std::clamp(
        static_cast<std::ptrdiff_t>(t + r) - static_cast<std::ptrdiff_t>(kContextRadius),
        std::ptrdiff_t{0}, last);
    const auto from = features.begin() + src * static_cast<std::ptrdiff_t>(input_lags);
    std::copy(from, from + static_cast<std::ptrdiff_t>(input_lags),
              in.grid.begin() + static_cast<std::ptrdiff_t>(r * input_lags));
  }
  return in;
}

FeatureInput build_input(const FrameSeries& series, std::size_t t, std::size_t input_lags) {
  if (t >= series.size()) throw RangeError("frame index out of range");
  if (input_lags > series.frame_len()) {
    throw DimensionError("input_lags exceeds the frame length");
  }
  // Only the (up to five) neighbouring rows are needed here.
  FeatureInput in;
  in.input_lags = input_lags;
  in.grid.resize(kContextFrames * input_lags);
  const auto last = static_cast<std::ptrdiff_t>(series.size()) - 1;
  for (std::size_t r = 0; r < kContextFrames; ++r) {
    const std::ptrdiff_t src = std::clamp(
        static_cast<std::ptrdiff_t>(t + r) - static_cast<std::ptrdiff_t>(kContextRadius),
        std::ptrdiff_t{0}, last);
    const auto row = frame_feature(series.frame(static_cast<std::size_t>(src)), input_lags);
    std::copy(row.begin(), row.end(), in.grid.begin() + static_cast<std::ptrdiff_t>(r * input_lags));
  }
  return in;
}

Posterior predict(const ModelWeights& w, const FeatureInput& x) {
  if (x.context != w.context || x.input_lags != w.input_lags ||
      x.grid.size() != w.context * w.input_lags) {
    throw DimensionError("feature grid is " + std::to_string(x.context) + "x" +
                         std::to_string(x.input_lags) + ", model expects " +
                         std::to_string(w.context) + "x" + std::to_string(w.input_lags));
  }
  nn::Tensor3 a(x.context, x.input_lags, 1);
  a.data = x.grid;

  nn::Tensor3 h = nn::conv2d_same(a, w.conv1);
  nn::relu_inplace(h);
  nn::batch_norm_inplace(h, w.bn1);
  h = nn::max_pool_2x2(h);
  h = nn::conv2d_same(h, w.conv2);
  nn::relu_inplace(h);
  nn::batch_norm_inplace(h, w.bn2);
  // Tensor3 storage is already (row, lag, channel) flatten order.
  const auto logits = nn::dense(h.data, w.dense);
  const auto probs = nn::softmax(logits);

  Posterior out{};
  std::copy(probs.begin(), probs.end(), out.begin());
  return out;
}

BandLabel decide(const Posterior& p) {
  const auto it = std::max_element(p.begin(), p.end());  // first maximum
  return label_from_index(static_cast<std::size_t>(std::distance(p.begin(), it)));
}

std::vector<Posterior> track_posteriors(const ModelWeights& w, const AudioBuffer& buf,
                                        unsigned threads) {
  // predict() must not throw inside a worker thread
  if (w.context != kContextFrames || w.dense.in_features != w.flatten_dim()) {
    throw DimensionError("model shape is inconsistent; validate() the weights first");
  }
  const FrameSeries series = frame_signal(buf);
  const std::size_t n = series.size();
  const std::vector<double> features = frame_features(series, w.input_lags);
  std::vector<Posterior> out(n);

  unsigned workers = threads != 0 ? threads : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, n));
  auto run = [&](std::size_t begin, std::size_t end) {
    for (std::size_t t = begin; t < end; ++t) {
      out[t] = predict(w, assemble_input(features, n, t, w.input_lags));
    }
  };
  if (workers <= 1) {
    run(0, n);
    return out;
  }
  std::vector<std::thread> pool;
  const std::size_t chunk = (n + workers - 1) / workers;
  for (unsigned k = 0; k < workers; ++k) {
    const std::size_t begin = k * chunk;
    const std::size_t end = std::min(n, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back(run, begin, end);
  }
  for (auto& th : pool) th.join();
  return out;
}

std::vector<BandLabel> classify_track(const ModelWeights& w, const AudioBuffer& buf,
                                      unsigned threads) {
  const auto posts = track_posteriors(w, buf, threads);
  std::vector<BandLabel> labels;
  labels.reserve(posts.size());
  for (const auto& p : posts) labels.push_back(decide(p));
  return labels;
}

}  // namespace hf0
