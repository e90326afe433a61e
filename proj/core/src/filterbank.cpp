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

#include "hf0/filterbank.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <numbers>

#include "hf0/error.hpp"

namespace hf0 {
namespace {

constexpr std::size_t kSectionsPerBand = 4;

struct TableSection {
  double b0, b1, b2, a1, a2;
};

struct TableBand {
  double gain;
  std::array<TableSection, kSectionsPerBand> sections;
};

constexpr std::array<TableBand, kNumBands> kTable = {{
#include "filterbank_coefficients.inc"
}};

}  // namespace

BiquadCascade design_band_filter(BandLabel label, int sample_rate) {
  if (!is_voiced(label)) throw RangeError("no band filter for the unvoiced state");
  if (sample_rate != kAnalysisRate) {
    throw RangeError("band filters are designed for " + std::to_string(kAnalysisRate) +
                     " Hz, got " + std::to_string(sample_rate));
  }
  const TableBand& row = kTable[class_index(label)];
  BiquadCascade f;
  f.band = label;
  f.sample_rate = sample_rate;
  f.gain = row.gain;
  for (const auto& s : row.sections) f.sections.push_back({s.b0, s.b1, s.b2, s.a1, s.a2});
  return f;
}

std::vector<double> apply_filter(const BiquadCascade& filter, std::span<const double> samples) {
  std::vector<double> y(samples.begin(), samples.end());
  for (double& v : y) v *= filter.gain;
  for (const Biquad& s : filter.sections) {
    double z1 = 0.0;
    double z2 = 0.0;
    for (double& v : y) {
      const double x = v;
      const double out = s.b0 * x + z1;
      z1 = s.b1 * x - s.a1 * out + z2;
      z2 = s.b2 * x - s.a2 * out;
      v = out;
    }
  }
  return y;
}

double magnitude_response_db(const BiquadCascade& filter, double freq_hz) {
  const double w = 2.0 * std::numbers::pi * freq_hz / filter.sample_rate;
  const std::complex<double> z1 = std::polar(1.0, -w);
  const std::complex<double> z2 = z1 * z1;
  std::complex<double> h = filter.gain;
  for (const Biquad& s : filter.sections) {
    h *= (s.b0 + s.b1 * z1 + s.b2 * z2) / (1.0 + s.a1 * z1 + s.a2 * z2);
  }
  return 20.0 * std::log10(std::abs(h));
}

double max_pole_radius(const BiquadCascade& filter) {
  double radius = 0.0;
  for (const Biquad& s : filter.sections) {
    // roots of z^2 + a1 z + a2
    const std::complex<double> disc = std::sqrt(std::complex<double>(s.a1 * s.a1 - 4.0 * s.a2));
    const std::complex<double> p1 = (-s.a1 + disc) / 2.0;
    const std::complex<double> p2 = (-s.a1 - disc) / 2.0;
    radius = std::max({radius, std::abs(p1), std::abs(p2)});
  }
  return radius;
}

}  // namespace hf0
