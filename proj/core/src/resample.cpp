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

#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>

#include "hf0/audio.hpp"
#include "hf0/error.hpp"

namespace hf0 {
namespace {

// 64 taps per phase, counted at the lower of the two rates.
constexpr int kZeroCrossings = 32;
constexpr double kKaiserBeta = 8.0;
// Passband cutoff as a fraction of the lower Nyquist. With beta = 8 and 64
// taps the transition is about 0.15 of Nyquist wide, so this puts the start
// of the stopband at the new Nyquist.
constexpr double kCutoffFraction = 0.92;

double bessel_i0(double x) {
  double sum = 1.0;
  double term = 1.0;
  const double q = x * x / 4.0;
  for (int k = 1; k < 64; ++k) {
    term *= q / (static_cast<double>(k) * k);
    sum += term;
    if (term < sum * 1e-17) break;
  }
  return sum;
}

double kaiser(double t, double half_width) {
  const double r = t / half_width;
  if (r <= -1.0 || r >= 1.0) return 0.0;
  return bessel_i0(kKaiserBeta * std::sqrt(1.0 - r * r)) / bessel_i0(kKaiserBeta);
}

double sinc(double x) {
  if (x == 0.0) return 1.0;
  const double px = std::numbers::pi * x;
  return std::sin(px) / px;
}

}  // namespace

AudioBuffer resample(const AudioBuffer& buf, int target_rate) {
  if (target_rate <= 0) {
    throw RangeError("target sample rate must be positive, got " +
                     std::to_string(target_rate));
  }
  const int source_rate = buf.sample_rate();
  if (target_rate == source_rate) return buf;

  const std::int64_t g = std::gcd(source_rate, target_rate);
  const std::int64_t up = target_rate / g;    // L
  const std::int64_t down = source_rate / g;  // M

  // Everything below is in units of input samples.
  const double ratio = static_cast<double>(up) / static_cast<double>(down);
  const double cutoff = 0.5 * std::min(1.0, ratio) * kCutoffFraction;
  const double half_width = kZeroCrossings * std::max(1.0, 1.0 / ratio);
  const int taps = 2 * static_cast<int>(std::ceil(half_width));
  const int left = taps / 2 - 1;  // taps before the reference input sample

  // phase p covers output positions q + p/L; tap i reads input q - left + i
  std::vector<double> table(static_cast<std::size_t>(up) * taps);
  for (std::int64_t p = 0; p < up; ++p) {
    const double frac = static_cast<double>(p) / static_cast<double>(up);
    double* row = &table[static_cast<std::size_t>(p) * taps];
    double sum = 0.0;
    for (int i = 0; i < taps; ++i) {
      const double t = static_cast<double>(i - left) - frac;
      row[i] = 2.0 * cutoff * sinc(2.0 * cutoff * t) * kaiser(t, half_width);
      sum += row[i];
    }
    for (int i = 0; i < taps; ++i) row[i] /= sum;
  }

  const auto& x = buf.samples();
  const auto n_in = static_cast<std::int64_t>(x.size());
  const auto n_out = static_cast<std::int64_t>(
      std::llround(static_cast<double>(n_in) * static_cast<double>(up) /
                   static_cast<double>(down)));
  std::vector<double> y(static_cast<std::size_t>(n_out));
  for (std::int64_t n = 0; n < n_out; ++n) {
    const std::int64_t pos = n * down;
    const std::int64_t q = pos / up;
    const std::int64_t p = pos % up;
    const double* row = &table[static_cast<std::size_t>(p) * taps];
    double acc = 0.0;
    const std::int64_t first = q - left;
    const std::int64_t lo = std::max<std::int64_t>(0, -first);
    const std::int64_t hi = std::min<std::int64_t>(taps, n_in - first);
    for (std::int64_t i = lo; i < hi; ++i) acc += row[i] * x[first + i];
    y[static_cast<std::size_t>(n)] = acc;
  }
  return AudioBuffer(std::move(y), target_rate);
}

}  // namespace hf0
