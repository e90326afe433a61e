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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "hf0/error.hpp"
#include "hf0/metrics.hpp"
#include "oracles.hpp"
#include "tracks.hpp"

using hf0::PitchTrack;

namespace {

PitchTrack voiced_track(std::size_t n, double hop, double f0) {
  PitchTrack t = tracks::uniform(n, hop, 0.025);
  for (auto& e : t.entries) {
    e.voiced = true;
    e.f0 = f0;
  }
  return t;
}

void expect_matches_recount(const PitchTrack& est, const PitchTrack& ref) {
  const auto r = hf0::evaluate(est, ref);
  const auto o = oracle::recount(est, ref);
  const auto& c = r.counts;
  EXPECT_EQ(c.total, o.total);
  EXPECT_EQ(c.voiced_ref, o.voiced_ref);
  EXPECT_EQ(c.unvoiced_ref, o.unvoiced_ref);
  EXPECT_EQ(c.both_voiced, o.both_voiced);
  EXPECT_EQ(c.voiced_to_unvoiced, o.v_to_u);
  EXPECT_EQ(c.unvoiced_to_voiced, o.u_to_v);
  EXPECT_EQ(c.gross_errors, o.gross);
  EXPECT_EQ(c.raw_pitch_hits, o.rpa_hits);
  EXPECT_EQ(c.raw_chroma_hits, o.rca_hits);
  EXPECT_EQ(c.correct, o.correct);
  EXPECT_NEAR(r.fpe, o.fpe_percent, 1e-9);
  const double total = static_cast<double>(o.total);
  EXPECT_DOUBLE_EQ(r.vde, (o.v_to_u + o.u_to_v) / total);
  EXPECT_DOUBLE_EQ(r.ffe, (o.v_to_u + o.u_to_v + o.gross) / total);
  EXPECT_DOUBLE_EQ(r.oa, o.correct / total);
  if (o.both_voiced) EXPECT_DOUBLE_EQ(r.gpe, static_cast<double>(o.gross) / o.both_voiced);
  if (o.voiced_ref) {
    EXPECT_DOUBLE_EQ(r.rpa, static_cast<double>(o.rpa_hits) / o.voiced_ref);
    EXPECT_DOUBLE_EQ(r.rca, static_cast<double>(o.rca_hits) / o.voiced_ref);
    EXPECT_DOUBLE_EQ(r.vd_recall, static_cast<double>(o.both_voiced) / o.voiced_ref);
  }
  if (o.unvoiced_ref) EXPECT_DOUBLE_EQ(r.vfa, static_cast<double>(o.u_to_v) / o.unvoiced_ref);
}

}  // namespace

TEST(Cents, Examples) {
  EXPECT_EQ(hf0::cents(440.0, 440.0), 0.0);
  EXPECT_NEAR(hf0::cents(880.0, 440.0), 1200.0, 1e-9);
  EXPECT_NEAR(hf0::cents(466.16, 440.0), 100.0, 0.1);
  EXPECT_THROW(hf0::cents(0.0, 440.0), hf0::RangeError);
  EXPECT_THROW(hf0::cents(440.0, -1.0), hf0::RangeError);
}

TEST(Align, IdentityAndHalfHop) {
  const PitchTrack a = tracks::uniform(50, 0.01, 0.025);
  const auto same = hf0::align(a, a);
  for (std::size_t i = 0; i < same.size(); ++i) EXPECT_EQ(same[i], i);

  const PitchTrack fine = tracks::uniform(100, 0.005, 0.025);
  const auto twice = hf0::align(a, fine);
  ASSERT_EQ(twice.size(), 100u);
  std::vector<int> uses(a.size(), 0);
  for (auto k : twice) ++uses[k];
  for (std::size_t i = 0; i + 1 < a.size(); ++i) EXPECT_EQ(uses[i], 2) << i;

  const PitchTrack shifted = tracks::uniform(5, 0.01, 0.030);
  // 0.030 sits halfway between 0.025 and 0.035: the earlier frame wins.
  EXPECT_EQ(hf0::align(a, shifted)[0], 0u);

  const PitchTrack late = tracks::uniform(3, 0.01, 10.0);
  for (auto k : hf0::align(a, late)) EXPECT_EQ(k, 49u);

  EXPECT_THROW(hf0::align(PitchTrack{}, a), hf0::FormatError);
  EXPECT_THROW(hf0::align(a, PitchTrack{}), hf0::FormatError);
}

TEST(Evaluate, IdenticalTracks) {
  const PitchTrack t = voiced_track(80, 0.01, 220.0);
  const auto r = hf0::evaluate(t, t);
  EXPECT_EQ(r.vde, 0.0);
  EXPECT_EQ(r.gpe, 0.0);
  EXPECT_EQ(r.fpe, 0.0);
  EXPECT_EQ(r.ffe, 0.0);
  EXPECT_EQ(r.vfa, 0.0);
  EXPECT_EQ(r.vd_recall, 1.0);
  EXPECT_EQ(r.rpa, 1.0);
  EXPECT_EQ(r.rca, 1.0);
  EXPECT_EQ(r.oa, 1.0);
  EXPECT_TRUE(r.counts.no_unvoiced_ref);
}

TEST(Evaluate, DoubledPitch) {
  const PitchTrack ref = voiced_track(60, 0.01, 150.0);
  const PitchTrack est = voiced_track(60, 0.01, 300.0);
  const auto r = hf0::evaluate(est, ref);
  EXPECT_EQ(r.gpe, 1.0);
  EXPECT_EQ(r.rpa, 0.0);
  EXPECT_EQ(r.rca, 1.0);
  EXPECT_EQ(r.vde, 0.0);
  EXPECT_EQ(r.fpe, 0.0);
  EXPECT_TRUE(r.counts.no_fine_frames);
}

TEST(Evaluate, AllUnvoicedDegeneracy) {
  const PitchTrack t = tracks::uniform(40, 0.01, 0.025);
  const auto r = hf0::evaluate(t, t);
  EXPECT_EQ(r.oa, 1.0);
  EXPECT_EQ(r.vfa, 0.0);
  EXPECT_EQ(r.vd_recall, 0.0);
  EXPECT_TRUE(r.counts.no_voiced_ref);
  EXPECT_TRUE(r.counts.no_both_voiced);
  EXPECT_FALSE(r.counts.no_unvoiced_ref);
}

TEST(Evaluate, MatchesRecountOnRandomPairs) {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 60; ++trial) {
    const auto p = tracks::random_pair(rng, 200, trial % 3 != 0);
    expect_matches_recount(p.est, p.ref);
  }
}

TEST(Evaluate, OrderingAndDecompositionBounds) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const auto p = tracks::random_pair(rng, 150, trial % 2 == 0);
    const auto r = hf0::evaluate(p.est, p.ref);
    for (double v : hf0::metric_values(r)) EXPECT_GE(v, 0.0);
    for (double v : {r.vde, r.gpe, r.ffe, r.vd_recall, r.vfa, r.rpa, r.rca, r.oa}) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0);
    }
    EXPECT_GE(r.rca, r.rpa);
    EXPECT_LE(r.oa, 1.0 - r.vde + 1e-12);
    const double share = static_cast<double>(r.counts.both_voiced) / r.counts.total;
    EXPECT_LE(r.ffe, r.vde + r.gpe * share + 1e-9);
  }
}

TEST(Evaluate, UniformTimeShiftLeavesPitchErrorsUnchanged) {
  std::mt19937 rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    auto p = tracks::random_pair(rng, 120, trial % 2 == 0);
    const auto before = hf0::evaluate(p.est, p.ref);
    const double offset = 0.75 + 0.01 * trial;
    for (auto* t : {&p.est, &p.ref}) {
      for (auto& e : t->entries) e.time += offset;
    }
    const auto after = hf0::evaluate(p.est, p.ref);
    EXPECT_DOUBLE_EQ(after.gpe, before.gpe);
    EXPECT_NEAR(after.fpe, before.fpe, 1e-12);
  }
}

TEST(Report, TextAndCsv) {
  const PitchTrack t = voiced_track(10, 0.01, 220.0);
  const auto r = hf0::evaluate(t, t);
  const std::string kv = hf0::to_key_value(r);
  EXPECT_NE(kv.find("oa=1"), std::string::npos) << kv;
  EXPECT_NE(kv.find("vde=0"), std::string::npos) << kv;
  EXPECT_EQ(hf0::csv_header().rfind("file,vde,gpe,fpe,ffe,vd_recall,vfa,rpa,rca,oa", 0), 0u);
  const std::string row = hf0::csv_row("a.csv", r);
  EXPECT_EQ(row.rfind("a.csv,", 0), 0u);
  const std::string header = hf0::csv_header();
  EXPECT_EQ(std::count(row.begin(), row.end(), ','), std::count(header.begin(), header.end(), ','));
}

TEST(Summary, MeanAndSampleVariance) {
  hf0::EvalReport a, b, c;
  a.oa = 0.5;
  b.oa = 0.7;
  c.oa = 0.9;
  const auto s = hf0::summarize({a, b, c});
  EXPECT_EQ(s.files, 3u);
  EXPECT_NEAR(s.mean[8], 0.7, 1e-12);
  EXPECT_NEAR(s.variance[8], 0.04, 1e-12);
  const auto one = hf0::summarize({a});
  EXPECT_EQ(one.variance[8], 0.0);
  EXPECT_NE(hf0::to_key_value(s).find("files=3"), std::string::npos);
}
