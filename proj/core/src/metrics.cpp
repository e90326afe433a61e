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

#include "hf0/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "hf0/error.hpp"

namespace hf0 {

std::vector<std::size_t> align(const PitchTrack& est, const PitchTrack& ref) {
  if (est.empty()) throw FormatError("align: estimate track is empty");
  if (ref.empty()) throw FormatError("align: reference track is empty");
  const double t0 = est.entries.front().time;
  const double hop = est.size() > 1 ? est.entries[1].time - t0 : est.hop_seconds;
  const auto last = static_cast<double>(est.size() - 1);

  std::vector<std::size_t> out;
  out.reserve(ref.size());
  for (const PitchEntry& e : ref.entries) {
    double k = 0.0;
    if (hop > 0.0) {
      // A reference time exactly halfway between two centres maps to the
      // earlier one; the epsilon absorbs rounding in the division.
      k = std::ceil((e.time - t0) / hop - 0.5 - 1e-9);
    }
    out.push_back(static_cast<std::size_t>(std::clamp(k, 0.0, last)));
  }
  return out;
}

double cents(double f_est, double f_ref) {
  if (!(f_est > 0.0) || !(f_ref > 0.0)) {
    throw RangeError("cents: frequencies must be positive");
  }
  return 1200.0 * std::log2(f_est / f_ref);
}

namespace {

double fold_chroma(double c) {
  // into (-600, 600]
  double f = std::fmod(c, 1200.0);
  if (f > 600.0) f -= 1200.0;
  if (f <= -600.0) f += 1200.0;
  return f;
}

double ratio(std::size_t num, std::size_t den, bool& flag) {
  flag = den == 0;
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

std::array<double, kNumMetrics> metric_values(const EvalReport& r) {
  return {r.vde, r.gpe, r.fpe, r.ffe, r.vd_recall, r.vfa, r.rpa, r.rca, r.oa};
}

EvalReport evaluate(const PitchTrack& est, const PitchTrack& ref) {
  const std::vector<std::size_t> pairs = align(est, ref);
  EvalReport r;
  EvalCounts& c = r.counts;
  double fine_sum = 0.0;
  std::size_t fine_frames = 0;

  c.total = ref.size();
  for (std::size_t i = 0; i < ref.size(); ++i) {
    const PitchEntry& g = ref.entries[i];
    const PitchEntry& e = est.entries[pairs[i]];
    if (!g.voiced) {
      ++c.unvoiced_ref;
      if (e.voiced) {
        ++c.unvoiced_to_voiced;
      } else {
        ++c.correct;
      }
      continue;
    }
    ++c.voiced_ref;
    if (!e.voiced) {
      ++c.voiced_to_unvoiced;
      continue;
    }
    ++c.both_voiced;
    const double rel = std::abs(e.f0 / g.f0 - 1.0);
    if (rel > kGrossErrorRatio) {
      ++c.gross_errors;
    } else {
      fine_sum += rel;
      ++fine_frames;
    }
    const double d = cents(e.f0, g.f0);
    if (std::abs(d) <= kRawPitchCents) {
      ++c.raw_pitch_hits;
      ++c.correct;
    }
    if (std::abs(fold_chroma(d)) <= kRawPitchCents) ++c.raw_chroma_hits;
  }

  const std::size_t voicing_errors = c.voiced_to_unvoiced + c.unvoiced_to_voiced;
  bool unused = false;
  r.vde = ratio(voicing_errors, c.total, unused);
  r.ffe = ratio(voicing_errors + c.gross_errors, c.total, unused);
  r.oa = ratio(c.correct, c.total, unused);
  r.gpe = ratio(c.gross_errors, c.both_voiced, c.no_both_voiced);
  c.no_fine_frames = fine_frames == 0;
  r.fpe = fine_frames == 0 ? 0.0 : 100.0 * fine_sum / static_cast<double>(fine_frames);
  r.vd_recall = ratio(c.both_voiced, c.voiced_ref, c.no_voiced_ref);
  r.rpa = ratio(c.raw_pitch_hits, c.voiced_ref, unused);
  r.rca = ratio(c.raw_chroma_hits, c.voiced_ref, unused);
  r.vfa = ratio(c.unvoiced_to_voiced, c.unvoiced_ref, c.no_unvoiced_ref);
  return r;
}

namespace {

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

std::string to_key_value(const EvalReport& r) {
  std::string out;
  const auto values = metric_values(r);
  for (std::size_t i = 0; i < kNumMetrics; ++i) {
    out += std::string(kMetricNames[i]) + "=" + fmt_double(values[i]) + "\n";
  }
  const EvalCounts& c = r.counts;
  auto put = [&](const char* key, std::size_t v) { out += std::string(key) + "=" + std::to_string(v) + "\n"; };
  put("total_frames", c.total);
  put("voiced_ref_frames", c.voiced_ref);
  put("unvoiced_ref_frames", c.unvoiced_ref);
  put("both_voiced_frames", c.both_voiced);
  put("gross_error_frames", c.gross_errors);
  put("flag_no_both_voiced", c.no_both_voiced);
  put("flag_no_fine_frames", c.no_fine_frames);
  put("flag_no_voiced_ref", c.no_voiced_ref);
  put("flag_no_unvoiced_ref", c.no_unvoiced_ref);
  return out;
}

std::string csv_header() {
  std::string out = "file";
  for (auto name : kMetricNames) out += "," + std::string(name);
  return out + ",total_frames,voiced_ref_frames,unvoiced_ref_frames,both_voiced_frames\n";
}

std::string csv_row(std::string_view name, const EvalReport& r) {
  std::string out(name);
  for (double v : metric_values(r)) out += "," + fmt_double(v);
  const EvalCounts& c = r.counts;
  out += "," + std::to_string(c.total) + "," + std::to_string(c.voiced_ref) + "," +
         std::to_string(c.unvoiced_ref) + "," + std::to_string(c.both_voiced) + "\n";
  return out;
}

CorpusSummary summarize(const std::vector<EvalReport>& reports) {
  CorpusSummary s;
  s.files = reports.size();
  if (reports.empty()) return s;
  for (const auto& r : reports) {
    const auto v = metric_values(r);
    for (std::size_t i = 0; i < kNumMetrics; ++i) s.mean[i] += v[i];
  }
  const auto n = static_cast<double>(reports.size());
  for (double& m : s.mean) m /= n;
  if (reports.size() < 2) return s;
  for (const auto& r : reports) {
    const auto v = metric_values(r);
    for (std::size_t i = 0; i < kNumMetrics; ++i) {
      const double d = v[i] - s.mean[i];
      s.variance[i] += d * d;
    }
  }
  for (double& var : s.variance) var /= n - 1.0;
  return s;
}

std::string to_key_value(const CorpusSummary& s) {
  std::string out = "files=" + std::to_string(s.files) + "\n";
  for (std::size_t i = 0; i < kNumMetrics; ++i) {
    out += "mean_" + std::string(kMetricNames[i]) + "=" + fmt_double(s.mean[i]) + "\n";
    out += "var_" + std::string(kMetricNames[i]) + "=" + fmt_double(s.variance[i]) + "\n";
  }
  return out;
}

}  // namespace hf0
