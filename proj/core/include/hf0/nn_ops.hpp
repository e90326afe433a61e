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

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace hf0::nn {

// Height x width x channels, row-major with channels innermost.
struct Tensor3 {
  std::size_t height = 0;
  std::size_t width = 0;
  std::size_t channels = 0;
  std::vector<double> data;

  Tensor3() = default;
  Tensor3(std::size_t h, std::size_t w, std::size_t c)
      : height(h), width(w), channels(c), data(h * w * c, 0.0) {}

  double& at(std::size_t i, std::size_t j, std::size_t k) {
    return data[(i * width + j) * channels + k];
  }
  double at(std::size_t i, std::size_t j, std::size_t k) const {
    return data[(i * width + j) * channels + k];
  }
};

// Kernel layout [kernel_h][kernel_w][in_channels][out_channels].
struct Conv2dParams {
  std::size_t kernel_h = 3;
  std::size_t kernel_w = 3;
  std::size_t in_channels = 0;
  std::size_t out_channels = 0;
  std::vector<double> kernel;
  std::vector<double> bias;
};

struct BatchNormParams {
  std::vector<double> gamma;
  std::vector<double> beta;
  std::vector<double> mean;
  std::vector<double> var;
  double eps = 1e-3;
};

// Weight layout [in][out].
struct DenseParams {
  std::size_t in_features = 0;
  std::size_t out_features = 0;
  std::vector<double> weight;
  std::vector<double> bias;
};

// Stride 1, zero "same" padding (odd kernels): output spatial dims equal the
// input's. Cross-correlation, as in every deep-learning framework.
Tensor3 conv2d_same(const Tensor3& x, const Conv2dParams& p);

void relu_inplace(Tensor3& x);

// Inference-mode batch norm: (x - mean) / sqrt(var + eps) * gamma + beta.
void batch_norm_inplace(Tensor3& x, const BatchNormParams& p);

// 2x2 window, stride 2, trailing odd row/column dropped.
Tensor3 max_pool_2x2(const Tensor3& x);

std::vector<double> dense(std::span<const double> x, const DenseParams& p);

// Numerically stable softmax.
std::vector<double> softmax(std::span<const double> logits);

}  // namespace hf0::nn
