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

#include "hf0/pitch_track.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string_view>

#include "hf0/error.hpp"

namespace hf0 {
namespace {

constexpr std::string_view kHeader = "time_s,f0_hz,voiced";
// Half a unit in the sixth decimal on each of two timestamps, plus slack.
constexpr double kCsvTimeTolerance = 1.5e-6;

[[noreturn]] void fail_line(std::size_t line, const std::string& what) {
  throw FormatError("line " + std::to_string(line) + ": " + what);
}

double parse_number(std::string_view field, std::size_t line, const char* name) {
  // from_chars rejects a leading '+'; accept it for friendliness.
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  double v = 0.0;
  const auto* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, v);
  if (field.empty() || ec != std::errc() || ptr != end || !std::isfinite(v)) {
    fail_line(line, std::string("non-numeric ") + name + " value '" + std::string(field) + "'");
  }
  return v;
}

}  // namespace

void validate(const PitchTrack& track, const TrackCheck& check) {
  const auto& e = track.entries;
  for (std::size_t i = 0; i < e.size(); ++i) {
    const auto& p = e[i];
    if (!std::isfinite(p.time) || !std::isfinite(p.f0)) {
      throw FormatError("entry " + std::to_string(i) + ": non-finite value");
    }
    if (!p.voiced && p.f0 != 0.0) {
      throw FormatError("entry " + std::to_string(i) + ": unvoiced entry with non-zero f0");
    }
    if (p.voiced) {
      if (p.f0 <= 0.0) {
        throw FormatError("entry " + std::to_string(i) + ": voiced entry with f0 <= 0");
      }
      if (check.enforce_f0_range && (p.f0 < kMinF0 || p.f0 >= kMaxF0)) {
        std::ostringstream msg;
        msg << "entry " << i << ": voiced f0 " << p.f0 << " Hz outside [" << kMinF0 << ", "
            << kMaxF0 << ")";
        throw RangeError(msg.str());
      }
    }
    if (i > 0) {
      const double step = p.time - e[i - 1].time;
      if (step <= 0.0) {
        throw FormatError("entry " + std::to_string(i) + ": times not strictly increasing");
      }
      if (std::abs(step - track.hop_seconds) > check.time_tolerance) {
        std::ostringstream msg;
        msg << "entry " << i << ": spacing " << step << " s differs from hop "
            << track.hop_seconds << " s";
        throw FormatError(msg.str());
      }
    }
  }
}

void write_pitch_track(const PitchTrack& track, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << kHeader << '\n';
  char line[96];
  for (const auto& p : track.entries) {
    const int n = std::snprintf(line, sizeof line, "%.6f,%.4f,%d\n", p.time,
                                p.voiced ? p.f0 : 0.0, p.voiced ? 1 : 0);
    out.write(line, n);
  }
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

namespace {

PitchTrack parse_track(const std::filesystem::path& path, bool enforce_range) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");

  PitchTrack track;
  std::string raw;
  std::size_t line_no = 0;
  bool seen_header = false;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line(raw);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!seen_header) {
      if (line != kHeader) {
        fail_line(line_no, "expected header '" + std::string(kHeader) + "'");
      }
      seen_header = true;
      continue;
    }
    if (line.empty()) continue;

    std::string_view fields[3];
    std::size_t count = 0;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      const std::string_view f =
          line.substr(start, comma == std::string_view::npos ? line.npos : comma - start);
      if (count < 3) fields[count] = f;
      ++count;
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (count != 3) {
      fail_line(line_no, "expected 3 columns, found " + std::to_string(count));
    }
    PitchEntry e;
    e.time = parse_number(fields[0], line_no, "time_s");
    e.f0 = parse_number(fields[1], line_no, "f0_hz");
    if (fields[2] == "1") {
      e.voiced = true;
    } else if (fields[2] == "0") {
      e.voiced = false;
    } else {
      fail_line(line_no, "voiced must be 0 or 1, got '" + std::string(fields[2]) + "'");
    }
    if (e.voiced && enforce_range && (e.f0 < kMinF0 || e.f0 >= kMaxF0)) {
      std::ostringstream msg;
      msg << "line " << line_no << ": voiced f0 " << e.f0 << " Hz outside [" << kMinF0 << ", "
          << kMaxF0 << ")";
      throw RangeError(msg.str());
    }
    track.entries.push_back(e);
  }
  if (!seen_header) fail_line(1, "missing header");

  const auto& ent = track.entries;
  if (ent.size() >= 2) {
    track.hop_seconds = (ent.back().time - ent.front().time) / static_cast<double>(ent.size() - 1);
  }
  validate(track, TrackCheck{kCsvTimeTolerance, enforce_range});
  return track;
}

}  // namespace

PitchTrack read_pitch_track(const std::filesystem::path& path) {
  return parse_track(path, false);
}

PitchTrack read_ground_truth(const std::filesystem::path& path) {
  return parse_track(path, true);
}

}  // namespace hf0
