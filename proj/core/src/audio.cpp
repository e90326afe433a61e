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

#include "hf0/audio.hpp"

#include <cmath>
#include <sstream>

#include "hf0/error.hpp"

namespace hf0 {

AudioBuffer::AudioBuffer(std::vector<double> samples, int sample_rate)
    : samples_(std::move(samples)), sample_rate_(sample_rate) {
  if (sample_rate_ <= 0) {
    throw RangeError("sample rate must be positive, got " +
                     std::to_string(sample_rate_));
  }
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    if (!std::isfinite(samples_[i])) {
      std::ostringstream msg;
      msg << "non-finite audio sample at index " << i;
      throw RangeError(msg.str());
    }
  }
}

double rms(std::span<const double> x) {
  if (x.empty()) return 0.0;
  double acc = 0.0;
  for (double v : x) acc += v * v;
  return std::sqrt(acc / static_cast<double>(x.size()));
}

NoiseMix mix_noise(const AudioBuffer& clean, const AudioBuffer& noise,
                   double snr_db) {
  if (clean.sample_rate() != noise.sample_rate()) {
    std::ostringstream msg;
    msg << "sample rate mismatch: clean " << clean.sample_rate()
        << " Hz, noise " << noise.sample_rate() << " Hz";
    throw DimensionError(msg.str());
  }
  if (noise.size() < clean.size()) {
    std::ostringstream msg;
    msg << "noise is shorter than clean signal (" << noise.size() << " < "
        << clean.size() << " samples); looping is not supported";
    throw DimensionError(msg.str());
  }
  if (!std::isfinite(snr_db)) throw RangeError("snr_db must be finite");

  const double clean_rms = rms(clean.view());
  const double noise_rms = rms(noise.view().first(clean.size()));
  if (clean_rms == 0.0) throw RangeError("clean signal has zero energy");
  if (noise_rms == 0.0) throw RangeError("noise signal has zero energy");

  const double gain = clean_rms / (noise_rms * std::pow(10.0, snr_db / 20.0));
  std::vector<double> out(clean.size());
  const auto& c = clean.samples();
  const auto& n = noise.samples();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = c[i] + gain * n[i];
  return {AudioBuffer(std::move(out), clean.sample_rate()), gain};
}

}  // namespace hf0
