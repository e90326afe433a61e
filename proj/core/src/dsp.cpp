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

#include "hf0/dsp.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hf0/error.hpp"

namespace hf0 {

FrameGeometry frame_geometry(std::size_t num_samples, int sample_rate) {
  if (sample_rate <= 0) throw RangeError("sample rate must be positive");
  if (num_samples == 0) throw RangeError("cannot frame an empty signal");
  FrameGeometry g;
  g.sample_rate = sample_rate;
  g.frame_len = static_cast<std::size_t>(std::lround(kFrameSeconds * sample_rate));
  g.hop = static_cast<std::size_t>(std::lround(kHopSeconds * sample_rate));
  g.num_samples = num_samples;
  g.num_frames = (num_samples + g.hop - 1) / g.hop;
  return g;
}

FrameSeries frame_signal(const AudioBuffer& buf) {
  if (buf.sample_rate() != kAnalysisRate) {
    throw RangeError("frame_signal expects " + std::to_string(kAnalysisRate) +
                     " Hz audio, got " + std::to_string(buf.sample_rate()) +
                     " Hz; resample first");
  }
  const FrameGeometry g = frame_geometry(buf.size(), buf.sample_rate());
  std::vector<double> data(g.num_frames * g.frame_len, 0.0);
  const auto& x = buf.samples();
  for (std::size_t t = 0; t < g.num_frames; ++t) {
    const std::size_t start = g.frame_start(t);
    const std::size_t n = std::min(g.frame_len, x.size() - start);
    std::copy_n(x.begin() + static_cast<std::ptrdiff_t>(start), n,
                data.begin() + static_cast<std::ptrdiff_t>(t * g.frame_len));
  }
  return FrameSeries(g, std::move(data));
}

namespace {

std::vector<double> zero_extended_acf(std::span<const double> x, std::size_t num_lags) {
  const std::size_t n = x.size();
  const std::size_t lags = (num_lags == 0) ? n : std::min(num_lags, n);
  std::vector<double> out(lags, 0.0);
  if (n == 0) return out;
  const double scale = 1.0 / static_cast<double>(n);
  for (std::size_t tau = 0; tau < lags; ++tau) {
    double acc = 0.0;
    const double* a = x.data();
    const double* b = x.data() + tau;
    const std::size_t m = n - tau;
    for (std::size_t j = 0; j < m; ++j) acc += a[j] * b[j];
    out[tau] = acc * scale;
  }
  return out;
}

}  // namespace

Acf autocorr(std::span<const double> frame, std::size_t num_lags) {
  return Acf{zero_extended_acf(frame, num_lags), false};
}

Acf normalize_acf(const Acf& acf) {
  Acf out;
  out.values.assign(acf.size(), 0.0);
  if (acf.size() == 0 || !(acf[0] > kSilenceEnergy)) {
    out.silent = true;
    return out;
  }
  const double inv = 1.0 / acf[0];
  for (std::size_t i = 0; i < acf.size(); ++i) out.values[i] = acf[i] * inv;
  out.values[0] = 1.0;
  return out;
}

Acf double_autocorr(const Acf& acf, std::size_t num_lags) {
  return Acf{zero_extended_acf(acf.values, num_lags), acf.silent};
}

std::vector<double> normalized_cross_autocorr(std::span<const double> signal,
                                              std::size_t start, std::size_t frame_len,
                                              std::size_t max_lag) {
  std::vector<double> out(max_lag + 1, 0.0);
  // Samples available from `start`, up to what the largest lag touches.
  const std::size_t avail =
      start < signal.size() ? std::min(frame_len + max_lag, signal.size() - start) : 0;
  const double* x = signal.data() + std::min(start, signal.size());

  // prefix sums of squares
  std::vector<double> sq(avail + 1, 0.0);
  for (std::size_t j = 0; j < avail; ++j) sq[j + 1] = sq[j] + x[j] * x[j];

  for (std::size_t tau = 0; tau <= max_lag && tau < avail; ++tau) {
    const std::size_t m = std::min(frame_len, avail - tau);
    double acc = 0.0;
    for (std::size_t j = 0; j < m; ++j) acc += x[j] * x[j + tau];
    const double denom = std::sqrt(sq[m] * (sq[tau + m] - sq[tau]));
    out[tau] = denom > 0.0 ? acc / denom : 0.0;
  }
  return out;
}

namespace {

void check_range(std::size_t size, LagRange range) {
  if (range.lag_min < 1 || range.lag_min >= range.lag_max || range.lag_max >= size) {
    std::ostringstream msg;
    msg << "invalid lag range [" << range.lag_min << ", " << range.lag_max
        << "] for " << size << " coefficients";
    throw RangeError(msg.str());
  }
}

}  // namespace

std::size_t find_t0(std::span<const double> rr, LagRange range) {
  check_range(rr.size(), range);
  std::size_t best = range.lag_min;
  for (std::size_t tau = range.lag_min + 1; tau <= range.lag_max; ++tau) {
    if (rr[tau] > rr[best]) best = tau;
  }
  return best;
}

PeakRefinement refine_peak(std::span<const double> r, std::size_t t0, LagRange range) {
  check_range(r.size(), range);
  if (t0 < range.lag_min || t0 > range.lag_max) {
    throw RangeError("t0 outside lag range");
  }
  auto is_peak = [&](std::size_t k) {
    return k >= 1 && k + 1 < r.size() && r[k - 1] <= r[k] && r[k] >= r[k + 1];
  };

  const std::size_t reach = std::max(t0 - range.lag_min, range.lag_max - t0);
  std::size_t peak = 0;
  bool found = false;
  for (std::size_t d = 0; d <= reach && !found; ++d) {
    if (t0 >= range.lag_min + d && is_peak(t0 - d)) {
      peak = t0 - d;
      found = true;
    } else if (t0 + d <= range.lag_max && is_peak(t0 + d)) {
      peak = t0 + d;
      found = true;
    }
  }
  if (!found) return {static_cast<double>(t0), t0, true};

  const double a = r[peak - 1];
  const double b = r[peak];
  const double c = r[peak + 1];
  const double curvature = a - 2.0 * b + c;
  double lag = static_cast<double>(peak);
  if (curvature != 0.0) {
    const double offset = 0.5 * (a - c) / curvature;
    if (std::abs(offset) <= 0.5) lag += offset;
  }
  return {lag, peak, false};
}

}  // namespace hf0
