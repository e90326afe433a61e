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

#include <filesystem>
#include <span>
#include <vector>

namespace hf0 {

// The analysis rate every pitch stage runs at.
inline constexpr int kAnalysisRate = 16000;

// Mono audio. Samples are nominally in [-1, 1] but mixing may exceed that.
class AudioBuffer {
 public:
  AudioBuffer() = default;
  // Throws RangeError if sample_rate <= 0 or any sample is non-finite.
  AudioBuffer(std::vector<double> samples, int sample_rate);

  const std::vector<double>& samples() const { return samples_; }
  std::span<const double> view() const { return samples_; }
  int sample_rate() const { return sample_rate_; }
  std::size_t size() const { return samples_.size(); }
  bool empty() const { return samples_.empty(); }
  double duration_seconds() const {
    return static_cast<double>(samples_.size()) / sample_rate_;
  }

 private:
  std::vector<double> samples_;
  int sample_rate_ = kAnalysisRate;
};

enum class WavEncoding { kPcm16, kFloat32 };

// Reads RIFF/WAVE PCM16 or IEEE float32 with one or two channels. Stereo is
// averaged to mono and PCM16 is scaled by 1/32768.
AudioBuffer load_wav(const std::filesystem::path& path);

void write_wav(const AudioBuffer& buf, const std::filesystem::path& path,
               WavEncoding encoding = WavEncoding::kFloat32);

// Band-limited rational resampling with a Kaiser-windowed sinc, polyphase
// form. Identity when the rates already match.
AudioBuffer resample(const AudioBuffer& buf, int target_rate);

struct NoiseMix {
  AudioBuffer mixture;
  double gain = 0.0;  // factor applied to the noise
};

// clean + g * noise[0 .. clean.size()) with g chosen so that the global
// RMS ratio equals snr_db. No clipping.
NoiseMix mix_noise(const AudioBuffer& clean, const AudioBuffer& noise,
                   double snr_db);

double rms(std::span<const double> x);

}  // namespace hf0
