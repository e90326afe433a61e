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

#include <span>
#include <vector>

#include "hf0/bands.hpp"

namespace hf0 {

// One second-order section, denominator normalised so a0 = 1.
struct Biquad {
  double b0 = 1.0, b1 = 0.0, b2 = 0.0;
  double a1 = 0.0, a2 = 0.0;
};

struct BiquadCascade {
  std::vector<Biquad> sections;
  double gain = 1.0;
  BandLabel band = BandLabel::kV;
  int sample_rate = kAnalysisRate;
};

// Elliptic band-pass (design order 4, 0.5 dB ripple, 40 dB stopband) with
// passband edges at band_edges(label). Coefficients come from an embedded
// table designed offline; see docs/filterbank_coefficients.txt.
// Throws RangeError for kV or a rate other than 16 kHz.
BiquadCascade design_band_filter(BandLabel label, int sample_rate = kAnalysisRate);

// Transposed direct form II, zero initial state, one causal pass.
std::vector<double> apply_filter(const BiquadCascade& filter, std::span<const double> samples);

// |H(e^{jw})| in dB at the given frequency.
double magnitude_response_db(const BiquadCascade& filter, double freq_hz);

// Largest pole magnitude over all sections.
double max_pole_radius(const BiquadCascade& filter);

}  // namespace hf0
