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

#include "hf0/decoder.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "hf0/error.hpp"
#include "hf0/filterbank.hpp"

namespace hf0 {

std::vector<LabelRun> segment_runs(std::span<const BandLabel> labels, const FrameGeometry& g) {
  std::vector<LabelRun> runs;
  const auto pad = static_cast<std::size_t>(std::lround(kRunPaddingSeconds * g.sample_rate));
  std::size_t begin = 0;
  while (begin < labels.size()) {
    std::size_t end = begin;
    while (end + 1 < labels.size() && labels[end + 1] == labels[begin]) ++end;
    LabelRun run;
    run.label = labels[begin];
    run.start_frame = begin;
    run.end_frame = end;
    const std::size_t first = g.frame_start(begin);
    run.start_sample = first > pad ? first - pad : 0;
    run.end_sample = std::min(g.num_samples, g.frame_start(end) + g.frame_len + pad);
    runs.push_back(run);
    begin = end + 1;
  }
  return runs;
}

std::size_t DecodeResult::clamped_frames() const {
  return static_cast<std::size_t>(
      std::count_if(diagnostics.begin(), diagnostics.end(), [](const auto& d) { return d.clamped; }));
}

namespace {

// Largest representable f0 strictly below the top of the pitch range, with
// room for 4-decimal CSV rounding.
constexpr double kHighestF0 = kMaxF0 - 1e-3;

constexpr double kSnapFraction = 0.12;

// The double-ACF argmax is only a coarse period: it sits a few percent short
// of the true lag and the nearest local maximum can be a ripple from leaked
// harmonics. Snap to the largest correlation within a window around it.
std::size_t strongest_near(std::span<const double> c, std::size_t t0, LagRange range) {
  const auto half = static_cast<std::size_t>(std::ceil(kSnapFraction * static_cast<double>(t0)));
  const std::size_t lo = std::max(range.lag_min, t0 > half ? t0 - half : 0);
  const std::size_t hi = std::min(range.lag_max, t0 + half);
  std::size_t best = t0;
  for (std::size_t k = lo; k <= hi; ++k) {
    if (c[k] > c[best]) best = k;
  }
  return best;
}

}  // namespace

PeriodEstimate estimate_period(std::span<const double> signal, std::size_t start,
                               std::size_t frame_len, LagRange range) {
  std::vector<double> frame(frame_len, 0.0);
  if (start < signal.size()) {
    std::copy_n(signal.begin() + static_cast<std::ptrdiff_t>(start),
                std::min(frame_len, signal.size() - start), frame.begin());
  }
  PeriodEstimate out;
  const Acf rr = double_autocorr(autocorr(frame), range.lag_max + 1);
  out.t0 = find_t0(rr.values, range);
  const std::vector<double> c = normalized_cross_autocorr(signal, start, frame_len, range.lag_max + 1);
  out.refined = refine_peak(c, strongest_near(c, out.t0, range), range);
  return out;
}

namespace {

std::vector<double> filter_reversed(const BiquadCascade& filter, std::span<const double> span) {
  std::vector<double> rev(span.rbegin(), span.rend());
  std::vector<double> y = apply_filter(filter, rev);
  std::reverse(y.begin(), y.end());
  return y;
}

void decode_band_run(const LabelRun& run, const AudioBuffer& buf, const FrameGeometry& g,
                     DecodeResult& out) {
  const BiquadCascade filter = design_band_filter(run.label, buf.sample_rate());
  const auto span = buf.view().subspan(run.start_sample, run.end_sample - run.start_sample);
  // The narrow bands ring for a few hundred ms after the span starts, far
  // longer than the run pad. Frames in the first half of the span read the
  // time-reversed filtering, whose start-up transient lies at the other end.
  const std::vector<double> forward = apply_filter(filter, span);
  const std::vector<double> backward = filter_reversed(filter, span);

  const LagRange range = band_lag_range(run.label, buf.sample_rate());
  const BandEdges allowed = band_tolerance(run.label);
  for (std::size_t t = run.start_frame; t <= run.end_frame; ++t) {
    const std::size_t local = g.frame_start(t) - run.start_sample;
    const bool early = 2 * local + g.frame_len < span.size();
    const PeriodEstimate est =
        estimate_period(early ? backward : forward, local, g.frame_len, range);
    const PeakRefinement& peak = est.refined;

    double f0 = buf.sample_rate() / peak.lag;
    bool clamped = false;
    const double lo = std::max(allowed.lo, kMinF0);
    const double hi = std::min(allowed.hi, kHighestF0);
    if (f0 < lo || f0 > hi) {
      f0 = std::clamp(f0, lo, hi);
      clamped = true;
    }

    out.track.entries[t].f0 = f0;
    out.track.entries[t].voiced = true;
    auto& d = out.diagnostics[t];
    d.raw_t0 = est.t0;
    d.refined_lag = peak.lag;
    d.clamped = clamped;
    d.degenerate = peak.degenerate;
  }
}

}  // namespace

DecodeResult decode_pitch(const AudioBuffer& buf, std::span<const BandLabel> labels) {
  if (buf.sample_rate() != kAnalysisRate) {
    throw RangeError("decode_pitch expects " + std::to_string(kAnalysisRate) + " Hz audio");
  }
  const FrameGeometry g = frame_geometry(buf.size(), buf.sample_rate());
  if (labels.size() != g.num_frames) {
    throw DimensionError("got " + std::to_string(labels.size()) + " labels for " +
                         std::to_string(g.num_frames) + " frames");
  }

  DecodeResult out;
  out.track.hop_seconds = g.hop_seconds();
  out.track.entries.resize(g.num_frames);
  out.diagnostics.resize(g.num_frames);
  for (std::size_t t = 0; t < g.num_frames; ++t) {
    out.track.entries[t].time = g.center_time(t);
    out.diagnostics[t].frame = t;
    out.diagnostics[t].label = labels[t];
  }

  for (const LabelRun& run : segment_runs(labels, g)) {
    if (is_voiced(run.label)) decode_band_run(run, buf, g, out);
  }
  return out;
}

void write_diagnostics(std::span<const FrameDiagnostic> diagnostics,
                       const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << "frame,label,raw_t0,refined_lag,clamped\n";
  char line[128];
  for (const auto& d : diagnostics) {
    const int n = std::snprintf(line, sizeof line, "%zu,%s,%zu,%.4f,%d\n", d.frame,
                                std::string(to_string(d.label)).c_str(), d.raw_t0, d.refined_lag,
                                d.clamped ? 1 : 0);
    out.write(line, n);
  }
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

}  // namespace hf0
