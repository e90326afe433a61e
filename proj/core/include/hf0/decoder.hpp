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

#include "hf0/audio.hpp"
#include "hf0/bands.hpp"
#include "hf0/dsp.hpp"
#include "hf0/pitch_track.hpp"

namespace hf0 {

// Filter warm-up added before and after each run.
inline constexpr double kRunPaddingSeconds = 0.025;

// Maximal block of consecutive frames sharing a label. Frames are inclusive;
// the sample span [start_sample, end_sample) covers the frames plus padding,
// clipped to the signal.
struct LabelRun {
  BandLabel label = BandLabel::kV;
  std::size_t start_frame = 0;
  std::size_t end_frame = 0;
  std::size_t start_sample = 0;
  std::size_t end_sample = 0;
};

std::vector<LabelRun> segment_runs(std::span<const BandLabel> labels, const FrameGeometry& geometry);

struct PeriodEstimate {
  std::size_t t0 = 0;        // double-ACF argmax
  PeakRefinement refined;    // fractional period
};

// Period of the frame signal[start, start + frame_len) (zero beyond the end):
// t0 from the double ACF, then the strongest normalised cross-correlation
// peak within 12 % of t0, refined by refine_peak. The cross-correlation reads
// up to lag_max + 1 samples past the frame.
PeriodEstimate estimate_period(std::span<const double> signal, std::size_t start,
                               std::size_t frame_len, LagRange range);

struct FrameDiagnostic {
  std::size_t frame = 0;
  BandLabel label = BandLabel::kV;
  std::size_t raw_t0 = 0;      // double-ACF argmax, 0 for unvoiced frames
  double refined_lag = 0.0;    // after peak refinement, 0 for unvoiced frames
  bool clamped = false;        // estimate fell outside the band tolerance
  bool degenerate = false;     // no local maximum near t0
};

struct DecodeResult {
  PitchTrack track;
  std::vector<FrameDiagnostic> diagnostics;

  std::size_t clamped_frames() const;
};

// Band-limited period search driven by per-frame labels. buf must be 16 kHz
// and labels.size() must equal the frame count of frame_signal(buf)
// (DimensionError otherwise).
DecodeResult decode_pitch(const AudioBuffer& buf, std::span<const BandLabel> labels);

// CSV: frame,label,raw_t0,refined_lag,clamped
void write_diagnostics(std::span<const FrameDiagnostic> diagnostics,
                       const std::filesystem::path& path);

}  // namespace hf0
