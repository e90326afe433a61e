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

#include "hf0/nn_ops.hpp"
#include "oracles.hpp"

using hf0::nn::Tensor3;

namespace {

Tensor3 random_tensor(std::mt19937& rng, std::size_t h, std::size_t w, std::size_t c) {
  std::normal_distribution<double> nd;
  Tensor3 t(h, w, c);
  for (auto& v : t.data) v = nd(rng);
  return t;
}

}  // namespace

TEST(Conv2dSame, MatchesDirectConvolutionOnRandomTensors) {
  std::mt19937 rng(3);
  std::uniform_int_distribution<std::size_t> dim(1, 6), ch(1, 3);
  std::normal_distribution<double> nd;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t h = dim(rng), w = dim(rng), cin = ch(rng), cout = ch(rng);
    const Tensor3 x = random_tensor(rng, h, w, cin);
    hf0::nn::Conv2dParams p;
    p.in_channels = cin;
    p.out_channels = cout;
    p.kernel.resize(9 * cin * cout);
    p.bias.resize(cout);
    for (auto& v : p.kernel) v = nd(rng);
    for (auto& v : p.bias) v = nd(rng);

    const Tensor3 y = hf0::nn::conv2d_same(x, p);
    ASSERT_EQ(y.height, h);
    ASSERT_EQ(y.width, w);
    ASSERT_EQ(y.channels, cout);
    const auto want = oracle::conv_same(x.data, h, w, cin, p.kernel, 3, 3, cout, p.bias);
    for (std::size_t i = 0; i < want.size(); ++i) ASSERT_NEAR(y.data[i], want[i], 1e-10);
  }
}

TEST(Conv2dSame, CentredDeltaIsIdentity) {
  std::mt19937 rng(4);
  const Tensor3 x = random_tensor(rng, 5, 7, 1);
  hf0::nn::Conv2dParams p;
  p.in_channels = 1;
  p.out_channels = 1;
  p.kernel.assign(9, 0.0);
  p.kernel[4] = 1.0;
  p.bias = {0.0};
  EXPECT_EQ(hf0::nn::conv2d_same(x, p).data, x.data);
}

TEST(MaxPool, MatchesNestedLoopsWithFloorSemantics) {
  std::mt19937 rng(6);
  std::uniform_int_distribution<std::size_t> dim(1, 8), ch(1, 4);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t h = dim(rng), w = dim(rng), c = ch(rng);
    const Tensor3 x = random_tensor(rng, h, w, c);
    const Tensor3 y = hf0::nn::max_pool_2x2(x);
    ASSERT_EQ(y.height, h / 2);
    ASSERT_EQ(y.width, w / 2);
    ASSERT_EQ(y.channels, c);
    const auto want = oracle::max_pool(x.data, h, w, c);
    ASSERT_EQ(y.data.size(), want.size());
    for (std::size_t i = 0; i < want.size(); ++i) ASSERT_NEAR(y.data[i], want[i], 1e-10);
  }
}

TEST(Relu, ClampsNegatives) {
  Tensor3 x(1, 4, 1);
  x.data = {-1.0, 0.0, 2.0, -0.5};
  hf0::nn::relu_inplace(x);
  EXPECT_EQ(x.data, (std::vector<double>{0.0, 0.0, 2.0, 0.0}));
}

TEST(BatchNorm, InferenceFormulaPerChannel) {
  Tensor3 x(1, 2, 2);
  x.data = {1.0, 2.0, 3.0, 4.0};
  hf0::nn::BatchNormParams p;
  p.gamma = {2.0, 1.0};
  p.beta = {0.5, -1.0};
  p.mean = {1.0, 0.0};
  p.var = {4.0 - 1e-3, 1.0 - 1e-3};
  p.eps = 1e-3;
  hf0::nn::batch_norm_inplace(x, p);
  EXPECT_NEAR(x.at(0, 0, 0), 0.5, 1e-12);
  EXPECT_NEAR(x.at(0, 0, 1), 1.0, 1e-12);
  EXPECT_NEAR(x.at(0, 1, 0), 2.5, 1e-12);
  EXPECT_NEAR(x.at(0, 1, 1), 3.0, 1e-12);
}

TEST(Dense, RowTimesMatrixPlusBias) {
  hf0::nn::DenseParams p;
  p.in_features = 2;
  p.out_features = 3;
  p.weight = {1, 2, 3, 4, 5, 6};  // [in][out]
  p.bias = {0.5, 0.0, -1.0};
  const std::vector<double> x = {1.0, -1.0};
  EXPECT_EQ(hf0::nn::dense(x, p), (std::vector<double>{-2.5, -3.0, -4.0}));
}

TEST(Softmax, KnownLogitsAndExtremes) {
  std::vector<double> logits(9, 0.0);
  logits[0] = std::log(2.0);
  const auto p = hf0::nn::softmax(logits);
  EXPECT_NEAR(p[0], 0.2, 1e-12);
  for (std::size_t k = 1; k < 9; ++k) EXPECT_NEAR(p[k], 0.1, 1e-12);

  const auto big = hf0::nn::softmax(std::vector<double>{1000.0, 999.0, -1000.0});
  EXPECT_TRUE(std::isfinite(big[0]));
  EXPECT_NEAR(big[0] + big[1] + big[2], 1.0, 1e-12);
  EXPECT_NEAR(big[0] / big[1], std::exp(1.0), 1e-9);
}
