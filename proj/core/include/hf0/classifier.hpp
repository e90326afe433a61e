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

#include <array>
#include <filesystem>
#include <string>
#include <vector>

#include "hf0/audio.hpp"
#include "hf0/bands.hpp"
#include "hf0/dsp.hpp"
#include "hf0/error.hpp"
#include "hf0/nn_ops.hpp"

namespace hf0 {

// Frames of context on each side of the centre frame.
inline constexpr std::size_t kContextRadius = 2;
inline constexpr std::size_t kContextFrames = 2 * kContextRadius + 1;
// Normalised ACF lags fed to the network; covers the 50 Hz period at 16 kHz.
inline constexpr std::size_t kDefaultInputLags = 320;

// All parameters of the band classifier:
// conv1 -> ReLU -> BN -> maxpool 2x2 -> conv2 -> ReLU -> BN -> dense -> softmax.
struct ModelWeights {
  std::size_t input_lags = kDefaultInputLags;
  std::size_t context = kContextFrames;
  nn::Conv2dParams conv1;
  nn::BatchNormParams bn1;
  nn::Conv2dParams conv2;
  nn::BatchNormParams bn2;
  nn::DenseParams dense;

  // floor(context/2) * floor(input_lags/2) * conv2 channels
  std::size_t flatten_dim() const;
  std::size_t parameter_count() const;
  // Throws WeightFileError(kShapeMismatch / kInvariant / kNonFinite).
  void validate() const;
};

class WeightFileError : public FormatError {
 public:
  enum class Kind {
    kIo,
    kBadMagic,
    kVersionMismatch,
    kUnexpectedEof,
    kShapeMismatch,
    kMissingTensor,
    kUnknownTensor,
    kNonFinite,
    kInvariant,
  };
  WeightFileError(Kind kind, const std::string& what) : FormatError(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

inline constexpr std::uint32_t kWeightFileVersion = 1;

// One tensor as stored in an HF0W file.
struct NamedTensor {
  std::string name;
  std::vector<std::size_t> shape;
  std::vector<float> values;
};

// HF0W little-endian weight file. See README for the byte layout.
ModelWeights load_weights(const std::filesystem::path& path);
void save_weights(const ModelWeights& w, const std::filesystem::path& path);
// Tensor listing in file order, for inspection tools.
std::vector<NamedTensor> read_weight_tensors(const std::filesystem::path& path);

// context x input_lags grid; row r holds frame t - 2 + r.
struct FeatureInput {
  std::size_t context = kContextFrames;
  std::size_t input_lags = kDefaultInputLags;
  std::vector<double> grid;

  double at(std::size_t row, std::size_t lag) const { return grid[row * input_lags + lag]; }
};

// Normalised ACF of one frame truncated to input_lags coefficients.
std::vector<double> frame_feature(std::span<const double> frame, std::size_t input_lags);

// Feature rows for every frame of the series, concatenated.
std::vector<double> frame_features(const FrameSeries& series, std::size_t input_lags);

// Context rows for frame t; neighbours outside the series replicate the edge.
FeatureInput build_input(const FrameSeries& series, std::size_t t, std::size_t input_lags);
FeatureInput assemble_input(std::span<const double> features, std::size_t num_frames,
                            std::size_t t, std::size_t input_lags);

using Posterior = std::array<double, kNumClasses>;

// Throws DimensionError when the grid does not match the model.
Posterior predict(const ModelWeights& w, const FeatureInput& x);

// argmax, lower index wins ties.
BandLabel decide(const Posterior& p);

// Posterior for every analysis frame; buf must be at 16 kHz. Frames are
// spread over `threads` workers (0 = hardware concurrency); the result does
// not depend on the thread count.
std::vector<Posterior> track_posteriors(const ModelWeights& w, const AudioBuffer& buf,
                                        unsigned threads = 0);

std::vector<BandLabel> classify_track(const ModelWeights& w, const AudioBuffer& buf,
                                      unsigned threads = 0);

}  // namespace hf0
