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

#include "hf0/nn_ops.hpp"

#include <algorithm>
#include <cmath>

#include "hf0/error.hpp"

namespace hf0::nn {

Tensor3 conv2d_same(const Tensor3& x, const Conv2dParams& p) {
  if (x.channels != p.in_channels) {
    throw DimensionError("conv2d: input has " + std::to_string(x.channels) +
                         " channels, kernel expects " + std::to_string(p.in_channels));
  }
  if (p.kernel_h % 2 == 0 || p.kernel_w % 2 == 0) {
    throw DimensionError("conv2d: same padding needs odd kernel sizes");
  }
  const std::size_t out_ch = p.out_channels;
  const auto pad_h = static_cast<std::ptrdiff_t>(p.kernel_h / 2);
  const auto pad_w = static_cast<std::ptrdiff_t>(p.kernel_w / 2);
  const auto height = static_cast<std::ptrdiff_t>(x.height);
  const auto width = static_cast<std::ptrdiff_t>(x.width);

  Tensor3 y(x.height, x.width, out_ch);
  for (std::ptrdiff_t i = 0; i < height; ++i) {
    for (std::ptrdiff_t j = 0; j < width; ++j) {
      double* acc = &y.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j), 0);
      std::copy(p.bias.begin(), p.bias.end(), acc);
      for (std::size_t di = 0; di < p.kernel_h; ++di) {
        const std::ptrdiff_t si = i + static_cast<std::ptrdiff_t>(di) - pad_h;
        if (si < 0 || si >= height) continue;
        for (std::size_t dj = 0; dj < p.kernel_w; ++dj) {
          const std::ptrdiff_t sj = j + static_cast<std::ptrdiff_t>(dj) - pad_w;
          if (sj < 0 || sj >= width) continue;
          const double* in =
              &x.data[(static_cast<std::size_t>(si) * x.width + static_cast<std::size_t>(sj)) *
                      x.channels];
          const double* k = &p.kernel[(di * p.kernel_w + dj) * p.in_channels * out_ch];
          for (std::size_t c = 0; c < p.in_channels; ++c) {
            const double v = in[c];
            if (v == 0.0) continue;
            const double* kr = k + c * out_ch;
            for (std::size_t o = 0; o < out_ch; ++o) acc[o] += v * kr[o];
          }
        }
      }
    }
  }
  return y;
}

void relu_inplace(Tensor3& x) {
  for (double& v : x.data) v = std::max(v, 0.0);
}

void batch_norm_inplace(Tensor3& x, const BatchNormParams& p) {
  const std::size_t c = x.channels;
  std::vector<double> scale(c);
  std::vector<double> shift(c);
  for (std::size_t k = 0; k < c; ++k) {
    scale[k] = p.gamma[k] / std::sqrt(p.var[k] + p.eps);
    shift[k] = p.beta[k] - p.mean[k] * scale[k];
  }
  for (std::size_t n = 0; n < x.data.size(); n += c) {
    for (std::size_t k = 0; k < c; ++k) x.data[n + k] = x.data[n + k] * scale[k] + shift[k];
  }
}

Tensor3 max_pool_2x2(const Tensor3& x) {
  Tensor3 y(x.height / 2, x.width / 2, x.channels);
  for (std::size_t i = 0; i < y.height; ++i) {
    for (std::size_t j = 0; j < y.width; ++j) {
      for (std::size_t k = 0; k < x.channels; ++k) {
        y.at(i, j, k) = std::max({x.at(2 * i, 2 * j, k), x.at(2 * i, 2 * j + 1, k),
                                  x.at(2 * i + 1, 2 * j, k), x.at(2 * i + 1, 2 * j + 1, k)});
      }
    }
  }
  return y;
}

std::vector<double> dense(std::span<const double> x, const DenseParams& p) {
  if (x.size() != p.in_features) {
    throw DimensionError("dense: input has " + std::to_string(x.size()) +
                         " features, layer expects " + std::to_string(p.in_features));
  }
  std::vector<double> y(p.bias.begin(), p.bias.end());
  for (std::size_t i = 0; i < p.in_features; ++i) {
    const double v = x[i];
    const double* w = &p.weight[i * p.out_features];
    for (std::size_t o = 0; o < p.out_features; ++o) y[o] += v * w[o];
  }
  return y;
}

std::vector<double> softmax(std::span<const double> logits) {
  std::vector<double> out(logits.size());
  if (logits.empty()) return out;
  const double peak = *std::max_element(logits.begin(), logits.end());
  double sum = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    out[i] = std::exp(logits[i] - peak);
    sum += out[i];
  }
  for (double& v : out) v /= sum;
  return out;
}

}  // namespace hf0::nn
