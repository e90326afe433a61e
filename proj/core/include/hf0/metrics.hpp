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
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "hf0/pitch_track.hpp"

namespace hf0 {

inline constexpr double kGrossErrorRatio = 0.20;
inline constexpr double kRawPitchCents = 50.0;

// For every reference frame, the index of the estimate frame with the nearest
// centre time (ties go to the earlier frame, clamped at both ends).
// Throws FormatError if either track is empty.
std::vector<std::size_t> align(const PitchTrack& est, const PitchTrack& ref);

// 1200 * log2(f_est / f_ref); both must be positive (RangeError).
double cents(double f_est, double f_ref);

struct EvalCounts {
  std::size_t total = 0;
  std::size_t voiced_ref = 0;
  std::size_t unvoiced_ref = 0;
  std::size_t both_voiced = 0;
  std::size_t voiced_to_unvoiced = 0;
  std::size_t unvoiced_to_voiced = 0;
  std::size_t gross_errors = 0;
  std::size_t raw_pitch_hits = 0;
  std::size_t raw_chroma_hits = 0;
  std::size_t correct = 0;
  // Set when the metric's denominator was zero (the metric is reported as 0).
  bool no_both_voiced = false;
  bool no_fine_frames = false;
  bool no_voiced_ref = false;
  bool no_unvoiced_ref = false;
};

struct EvalReport {
  double vde = 0.0;
  double gpe = 0.0;
  double fpe = 0.0;  // percent
  double ffe = 0.0;
  double vd_recall = 0.0;
  double vfa = 0.0;
  double rpa = 0.0;
  double rca = 0.0;
  double oa = 0.0;
  EvalCounts counts;
};

inline constexpr std::size_t kNumMetrics = 9;
inline constexpr std::array<std::string_view, kNumMetrics> kMetricNames = {
    "vde", "gpe", "fpe", "ffe", "vd_recall", "vfa", "rpa", "rca", "oa"};

std::array<double, kNumMetrics> metric_values(const EvalReport& r);

EvalReport evaluate(const PitchTrack& est, const PitchTrack& ref);

// Flat key=value lines, metrics first then counts.
std::string to_key_value(const EvalReport& r);

// CSV header/row: file, the nine metrics, then the four frame counts.
std::string csv_header();
std::string csv_row(std::string_view name, const EvalReport& r);

struct CorpusSummary {
  std::size_t files = 0;
  std::array<double, kNumMetrics> mean{};
  std::array<double, kNumMetrics> variance{};  // sample variance, 0 for one file
};

CorpusSummary summarize(const std::vector<EvalReport>& reports);
std::string to_key_value(const CorpusSummary& s);

}  // namespace hf0
