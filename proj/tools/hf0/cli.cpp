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

#include "hf0/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hf0/audio.hpp"
#include "hf0/bands.hpp"
#include "hf0/classifier.hpp"
#include "hf0/decoder.hpp"
#include "hf0/error.hpp"
#include "hf0/metrics.hpp"
#include "hf0/pitch_track.hpp"

namespace fs = std::filesystem;

namespace hf0::cli {
namespace {

struct ExtractArgs {
  std::string wav;
  std::string model;
  std::string out;
  std::string oracle_truth;
  bool diagnostics = false;
};

struct EvaluateArgs {
  std::string est;
  std::string ref;
  std::string report;
};

struct MixArgs {
  std::string clean;
  std::string noise;
  double snr_db = 0.0;
  std::string out;
};

// Labels for every analysis frame from a reference track: each frame takes
// the label of the reference entry nearest to its centre.
std::vector<BandLabel> labels_from_truth(const PitchTrack& truth, std::size_t num_samples) {
  const FrameGeometry g = frame_geometry(num_samples, kAnalysisRate);
  PitchTrack grid;
  grid.hop_seconds = g.hop_seconds();
  for (std::size_t t = 0; t < g.num_frames; ++t) grid.entries.push_back({g.center_time(t), 0.0, false});
  const std::vector<BandLabel> per_entry = oracle_labels(truth);
  const std::vector<std::size_t> nearest = align(truth, grid);
  std::vector<BandLabel> labels(g.num_frames);
  for (std::size_t t = 0; t < g.num_frames; ++t) labels[t] = per_entry[nearest[t]];
  return labels;
}

fs::path diagnostics_path(const fs::path& out) {
  fs::path p = out;
  p.replace_extension();
  return p.string() + ".diag.csv";
}

int cmd_extract(const ExtractArgs& a, std::ostream& out) {
  AudioBuffer buf = load_wav(a.wav);
  if (buf.sample_rate() != kAnalysisRate) buf = resample(buf, kAnalysisRate);

  std::vector<BandLabel> labels;
  if (!a.oracle_truth.empty()) {
    labels = labels_from_truth(read_ground_truth(a.oracle_truth), buf.size());
  } else {
    labels = classify_track(load_weights(a.model), buf);
  }
  const DecodeResult result = decode_pitch(buf, labels);
  write_pitch_track(result.track, a.out);
  if (a.diagnostics) {
    const fs::path diag = diagnostics_path(a.out);
    write_diagnostics(result.diagnostics, diag);
    out << "diagnostics: " << diag.string() << "\n";
  }
  const auto voiced = std::count_if(result.track.entries.begin(), result.track.entries.end(),
                                    [](const PitchEntry& e) { return e.voiced; });
  out << "frames=" << result.track.size() << " voiced=" << voiced
      << " clamped=" << result.clamped_frames() << "\n";
  return kExitOk;
}

std::string csv_summary_rows(const CorpusSummary& s) {
  std::string out;
  char buf[64];
  for (const char* name : {"mean", "variance"}) {
    out += name;
    const auto& values = std::string_view(name) == "mean" ? s.mean : s.variance;
    for (double v : values) {
      std::snprintf(buf, sizeof buf, ",%.10g", v);
      out += buf;
    }
    out += ",,,,\n";
  }
  return out;
}

int cmd_evaluate(const EvaluateArgs& a, std::ostream& out) {
  const bool dirs = fs::is_directory(a.est) && fs::is_directory(a.ref);
  if (!dirs) {
    if (fs::is_directory(a.est) || fs::is_directory(a.ref)) {
      throw IoError("evaluate needs two files or two directories");
    }
    const EvalReport r = evaluate(read_pitch_track(a.est), read_ground_truth(a.ref));
    out << to_key_value(r);
    if (!a.report.empty()) {
      std::ofstream rep(a.report, std::ios::binary | std::ios::trunc);
      if (!rep) throw IoError("cannot open '" + a.report + "' for writing");
      rep << csv_header() << csv_row(fs::path(a.est).filename().string(), r);
    }
    return kExitOk;
  }

  // Pair by file name; sorted so the row order is stable.
  std::vector<std::string> names;
  for (const auto& entry : fs::directory_iterator(a.est)) {
    if (entry.is_regular_file() && entry.path().extension() == ".csv") {
      names.push_back(entry.path().filename().string());
    }
  }
  std::sort(names.begin(), names.end());
  if (names.empty()) throw IoError("no .csv tracks in '" + a.est + "'");

  std::vector<EvalReport> reports;
  std::string rows = csv_header();
  for (const auto& name : names) {
    const fs::path ref = fs::path(a.ref) / name;
    if (!fs::exists(ref)) throw IoError("no reference for '" + name + "' in '" + a.ref + "'");
    reports.push_back(evaluate(read_pitch_track(fs::path(a.est) / name), read_ground_truth(ref)));
    rows += csv_row(name, reports.back());
  }
  const CorpusSummary summary = summarize(reports);
  rows += csv_summary_rows(summary);
  out << rows << to_key_value(summary);
  if (!a.report.empty()) {
    std::ofstream rep(a.report, std::ios::binary | std::ios::trunc);
    if (!rep) throw IoError("cannot open '" + a.report + "' for writing");
    rep << rows;
  }
  return kExitOk;
}

int cmd_mix_noise(const MixArgs& a, std::ostream& out) {
  const NoiseMix mix = mix_noise(load_wav(a.clean), load_wav(a.noise), a.snr_db);
  write_wav(mix.mixture, a.out, WavEncoding::kFloat32);
  char line[96];
  std::snprintf(line, sizeof line, "noise_gain=%.10g\n", mix.gain);
  out << line;
  return kExitOk;
}

std::string shape_of(const std::vector<std::size_t>& shape) {
  std::string s = "[";
  for (std::size_t i = 0; i < shape.size(); ++i) s += (i ? ", " : "") + std::to_string(shape[i]);
  return s + "]";
}

int cmd_inspect(const std::string& path, std::ostream& out) {
  const std::vector<NamedTensor> tensors = read_weight_tensors(path);
  const ModelWeights w = load_weights(path);
  std::size_t total = 0;
  for (const auto& t : tensors) {
    out << t.name << " " << shape_of(t.shape) << " " << t.values.size() << "\n";
    total += t.values.size();
  }
  out << "input_lags=" << w.input_lags << "\n"
      << "context=" << w.context << "\n"
      << "channels=" << w.conv2.out_channels << "\n"
      << "flatten_dim=" << w.flatten_dim() << "\n"
      << "parameter_count=" << w.parameter_count() << "\n"
      << "tensor_values=" << total << "\n";
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"hf0: hybrid CNN / autocorrelation pitch extraction"};
  app.require_subcommand(1);

  ExtractArgs ex;
  auto* extract = app.add_subcommand("extract", "Extract an f0 track from a WAV file");
  extract->add_option("wav", ex.wav, "Input WAV")->required()->check(CLI::ExistingFile);
  auto* model = extract->add_option("--model", ex.model, "HF0W weight file")->check(CLI::ExistingFile);
  auto* oracle = extract->add_option("--oracle-truth", ex.oracle_truth,
                                     "Reference track CSV; labels come from it instead of the model")
                     ->check(CLI::ExistingFile);
  model->excludes(oracle);
  extract->add_option("--out", ex.out, "Output track CSV")->required();
  extract->add_flag("--diagnostics", ex.diagnostics, "Also write <out>.diag.csv");

  EvaluateArgs ev;
  auto* evaluate_cmd = app.add_subcommand("evaluate", "Score estimated tracks against references");
  evaluate_cmd->add_option("est", ev.est, "Estimated track CSV or directory")->required()->check(CLI::ExistingPath);
  evaluate_cmd->add_option("ref", ev.ref, "Reference track CSV or directory")->required()->check(CLI::ExistingPath);
  evaluate_cmd->add_option("--report", ev.report, "Write CSV rows here");

  MixArgs mx;
  auto* mix = app.add_subcommand("mix-noise", "Add noise to a clean WAV at a given SNR");
  mix->add_option("clean", mx.clean, "Clean WAV")->required()->check(CLI::ExistingFile);
  mix->add_option("noise", mx.noise, "Noise WAV")->required()->check(CLI::ExistingFile);
  mix->add_option("snr_db", mx.snr_db, "Target SNR in dB")->required();
  mix->add_option("out", mx.out, "Output WAV (float32)")->required();

  std::string inspect_path;
  auto* inspect = app.add_subcommand("inspect-weights", "List the tensors of an HF0W file");
  inspect->add_option("model", inspect_path, "HF0W weight file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\nRun with --help for usage.\n";
    return kExitUsage;
  }

  if (extract->parsed() && ex.model.empty() && ex.oracle_truth.empty()) {
    err << "usage error: extract needs --model or --oracle-truth\n";
    return kExitUsage;
  }

  try {
    if (extract->parsed()) return cmd_extract(ex, out);
    if (evaluate_cmd->parsed()) return cmd_evaluate(ev, out);
    if (mix->parsed()) return cmd_mix_noise(mx, out);
    if (inspect->parsed()) return cmd_inspect(inspect_path, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace hf0::cli
