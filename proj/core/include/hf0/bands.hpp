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
#include <cstdint>
#include <string_view>
#include <vector>

#include "hf0/dsp.hpp"
#include "hf0/pitch_track.hpp"

namespace hf0 {

// Eight half-open pitch bands covering [50, 800) Hz plus the unvoiced state.
// The enumerator value is the class index used in posteriors and files.
enum class BandLabel : std::uint8_t { kS1 = 0, kS2, kS3, kS4, kS5, kS6, kS7, kS8, kV };

inline constexpr std::size_t kNumBands = 8;
inline constexpr std::size_t kNumClasses = 9;

struct BandEdges {
  double lo = 0.0;  // Hz, inclusive
  double hi = 0.0;  // Hz, exclusive
};

inline constexpr std::array<double, kNumBands + 1> kBandBoundaries = {
    50.0, 75.0, 100.0, 150.0, 200.0, 300.0, 400.0, 600.0, 800.0};

constexpr std::size_t class_index(BandLabel label) { return static_cast<std::size_t>(label); }
constexpr bool is_voiced(BandLabel label) { return label != BandLabel::kV; }

// Throws RangeError for index > 8.
BandLabel label_from_index(std::size_t index);

// "s1" .. "s8", "v"
std::string_view to_string(BandLabel label);

// Throws RangeError unless 50 <= f0 < 800.
BandLabel band_of_frequency(double f0);

// Throws RangeError for kV.
BandEdges band_edges(BandLabel label);

// Voiced entries map through band_of_frequency, unvoiced ones to kV.
std::vector<BandLabel> oracle_labels(const PitchTrack& truth);

std::array<double, kNumClasses> one_hot(BandLabel label);

// Period search window for a band at the given rate:
// [floor(0.8 fs / f_hi), ceil(1.25 fs / f_lo)].
LagRange band_lag_range(BandLabel label, int sample_rate);

// Frequencies a band's decoded f0 may take: [0.8 f_lo, 1.25 f_hi].
BandEdges band_tolerance(BandLabel label);

}  // namespace hf0
