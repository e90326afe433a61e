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
#include <vector>

namespace hf0 {

// Inclusive lower / exclusive upper bound of the pitch range handled here.
inline constexpr double kMinF0 = 50.0;
inline constexpr double kMaxF0 = 800.0;

struct PitchEntry {
  double time = 0.0;  // seconds
  double f0 = 0.0;    // Hz, exactly 0 when unvoiced
  bool voiced = false;

  friend bool operator==(const PitchEntry&, const PitchEntry&) = default;
};

// Per-frame f0 contour on a uniform time grid.
struct PitchTrack {
  double hop_seconds = 0.01;
  std::vector<PitchEntry> entries;

  std::size_t size() const { return entries.size(); }
  bool empty() const { return entries.empty(); }
};

struct TrackCheck {
  // Spacing tolerance; CSV tracks carry 6-decimal times so readers pass a
  // looser value than in-memory producers.
  double time_tolerance = 1e-9;
  bool enforce_f0_range = true;
};

// Throws FormatError (structure) or RangeError (f0 outside [50, 800)).
void validate(const PitchTrack& track, const TrackCheck& check = {});

// CSV with header `time_s,f0_hz,voiced`, LF line endings.
void write_pitch_track(const PitchTrack& track, const std::filesystem::path& path);

// Parses the CSV written above. Errors carry the 1-based line number.
PitchTrack read_pitch_track(const std::filesystem::path& path);

// read_pitch_track plus the voiced-range check.
PitchTrack read_ground_truth(const std::filesystem::path& path);

}  // namespace hf0
