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

#include "hf0/audio.hpp"

namespace hf0 {

inline constexpr double kFrameSeconds = 0.050;
inline constexpr double kHopSeconds = 0.010;
// Frames whose zero-lag autocorrelation (mean power) is at or below this are
// treated as silent.
inline constexpr double kSilenceEnergy = 1e-10;

// Frame layout for a signal: frame t covers samples [t*hop, t*hop + N), the
// tail is zero padded and there are ceil(num_samples / hop) frames.
struct FrameGeometry {
  std::size_t frame_len = 0;
  std::size_t hop = 0;
  int sample_rate = 0;
  std::size_t num_samples = 0;
  std::size_t num_frames = 0;

  std::size_t frame_start(std::size_t t) const { return t * hop; }
  // Time of the frame centre in seconds; this is the timestamp of frame t in
  // every PitchTrack produced by the library.
  double center_time(std::size_t t) const {
    return (static_cast<double>(t * hop) + 0.5 * static_cast<double>(frame_len)) /
           sample_rate;
  }
  double hop_seconds() const { return static_cast<double>(hop) / sample_rate; }
};

// Throws RangeError for an empty signal or a non-positive rate.
FrameGeometry frame_geometry(std::size_t num_samples, int sample_rate);

class FrameSeries {
 public:
  FrameSeries(FrameGeometry geometry, std::vector<double> data)
      : geometry_(geometry), data_(std::move(data)) {}

  const FrameGeometry& geometry() const { return geometry_; }
  std::size_t size() const { return geometry_.num_frames; }
  std::size_t frame_len() const { return geometry_.frame_len; }
  std::span<const double> frame(std::size_t t) const {
    return std::span<const double>(data_).subspan(t * geometry_.frame_len, geometry_.frame_len);
  }

 private:
  FrameGeometry geometry_;
  std::vector<double> data_;
};

// 50 ms frames every 10 ms, rectangular window. The buffer must already be at
// 16 kHz (RangeError otherwise) and non-empty.
FrameSeries frame_signal(const AudioBuffer& buf);

// Autocorrelation coefficients indexed by lag.
struct Acf {
  std::vector<double> values;
  bool silent = false;  // set by normalize_acf for frames below kSilenceEnergy

  std::size_t size() const { return values.size(); }
  double operator[](std::size_t lag) const { return values[lag]; }
};

// r[tau] = (1/N) sum_{j=0}^{N-1-tau} x[j] x[j+tau], samples outside the frame
// taken as zero. `num_lags` truncates the output (the retained lags are
// bit-identical to the full computation); 0 means all N lags.
Acf autocorr(std::span<const double> frame, std::size_t num_lags = 0);

// Divides by r[0]; silent frames come back all zero with the flag set.
Acf normalize_acf(const Acf& acf);

// Autocorrelation of an autocorrelation, again zero-extended and scaled by
// 1/N where N = acf.size().
Acf double_autocorr(const Acf& acf, std::size_t num_lags = 0);

// Normalised cross-correlation of the frame x[start, start+N) with the same
// signal shifted by tau, reading past the end of the frame:
//   c[tau] = sum_j x[start+j] x[start+j+tau] / sqrt(e0 * e_tau)
// with j limited to the M(tau) = min(N, len - start - tau) terms that lie
// inside the signal, and e0, e_tau the energies of the two M-sample windows.
// Equals 1 at lags where the signal repeats exactly, so its peaks are not
// pulled towards short lags the way the zero-extended ACF's are.
std::vector<double> normalized_cross_autocorr(std::span<const double> signal,
                                              std::size_t start, std::size_t frame_len,
                                              std::size_t max_lag);

struct LagRange {
  std::size_t lag_min = 1;
  std::size_t lag_max = 1;
};

// argmax of rr over [lag_min, lag_max], smallest lag wins ties. Requires
// 1 <= lag_min < lag_max < rr.size().
std::size_t find_t0(std::span<const double> rr, LagRange range);

struct PeakRefinement {
  double lag = 0.0;        // refined (fractional) lag
  std::size_t peak = 0;    // integer local maximum used, t0 when degenerate
  bool degenerate = false; // no local maximum inside the range
};

// Nearest local maximum of r to t0 inside the range (outward search, smaller
// lag first on equal distance), refined by a three-point parabola. The
// integer peak is returned unchanged when the points are collinear or the
// vertex lies more than half a sample away.
PeakRefinement refine_peak(std::span<const double> r, std::size_t t0, LagRange range);

}  // namespace hf0
