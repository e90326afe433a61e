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

#include "hf0/bands.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hf0/error.hpp"

namespace hf0 {
namespace {

constexpr double kLowMargin = 0.8;
constexpr double kHighMargin = 1.25;

}  // namespace

BandLabel label_from_index(std::size_t index) {
  if (index >= kNumClasses) {
    throw RangeError("class index " + std::to_string(index) + " out of range");
  }
  return static_cast<BandLabel>(index);
}

std::string_view to_string(BandLabel label) {
  static constexpr std::array<std::string_view, kNumClasses> kNames = {
      "s1", "s2", "s3", "s4", "s5", "s6", "s7", "s8", "v"};
  return kNames[class_index(label)];
}

BandLabel band_of_frequency(double f0) {
  if (!(f0 >= kBandBoundaries.front() && f0 < kBandBoundaries.back())) {
    std::ostringstream msg;
    msg << "f0 " << f0 << " Hz outside [" << kBandBoundaries.front() << ", "
        << kBandBoundaries.back() << ")";
    throw RangeError(msg.str());
  }
  // first boundary strictly greater than f0 closes the band
  const auto it = std::upper_bound(kBandBoundaries.begin(), kBandBoundaries.end(), f0);
  return static_cast<BandLabel>(std::distance(kBandBoundaries.begin(), it) - 1);
}

BandEdges band_edges(BandLabel label) {
  if (!is_voiced(label)) throw RangeError("the unvoiced state has no frequency band");
  const std::size_t i = class_index(label);
  return {kBandBoundaries[i], kBandBoundaries[i + 1]};
}

std::vector<BandLabel> oracle_labels(const PitchTrack& truth) {
  std::vector<BandLabel> labels;
  labels.reserve(truth.size());
  for (const auto& e : truth.entries) {
    labels.push_back(e.voiced ? band_of_frequency(e.f0) : BandLabel::kV);
  }
  return labels;
}

std::array<double, kNumClasses> one_hot(BandLabel label) {
  std::array<double, kNumClasses> v{};
  v[class_index(label)] = 1.0;
  return v;
}

LagRange band_lag_range(BandLabel label, int sample_rate) {
  const BandEdges e = band_edges(label);
  const double fs = sample_rate;
  return {static_cast<std::size_t>(std::floor(kLowMargin * fs / e.hi)),
          static_cast<std::size_t>(std::ceil(kHighMargin * fs / e.lo))};
}

BandEdges band_tolerance(BandLabel label) {
  const BandEdges e = band_edges(label);
  return {kLowMargin * e.lo, kHighMargin * e.hi};
}

}  // namespace hf0
