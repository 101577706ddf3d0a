// Copyright 2026 The Ringstar Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Batch experiment runner behind the command-line tool.
//
// A config is a flat key-value file (see kv_config.hpp). Recognized keys:
//
//   experiment   quench_entropy | otoc_map | otoc_curve | autocorr |
//                star_oracle | spectrum_stats | fit | lambda_c_scan
//   seed         master seed (default 0); seeds = [..] job seed labels
//   workers, output_dir
//   model.*      ModelSpec fields (L, lambda, J, h, g, h_c, g_c, axis, boundary)
//   sweep.*      lists over ModelSpec fields; the run covers their product
//   t_grid.*     t_max, n_points, spacing (linear | log), t_min (log only)
//   krylov.*     subspace_dim, dt, tolerance
//   otoc.*       v, w (e.g. "Z0", "X3"; site L is the c-qubit), w_sites,
//                method (auto | krylov | spectral | exact_trace), samples
//   autocorr.*   op, mode (haar | exact), samples, t0
//   quench.*     initial (plus_y | haar), subsystem_a, cqubit_in_a
//   spectrum.*   window (count or "all")
//   fit.*        model (decaying_cosine | power_law | loglinear |
//                log_vs_power), input = [csv files], t_min, t_max,
//                smooth, smoothing_period
//   scan.*       L, lambda, h_c (lists), t_star (number or "auto")
//
// Each job seed is derive_seed(seed, label) so results do not depend on the
// schedule.

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ringstar/fit.hpp"
#include "ringstar/krylov.hpp"
#include "ringstar/model.hpp"
#include "ringstar/observables.hpp"
#include "ringstar/spectral.hpp"
#include "ringstar/timeseries.hpp"

namespace ringstar {

enum class ExperimentKind {
  QuenchEntropy,
  OtocMap,
  OtocCurve,
  Autocorr,
  StarOracle,
  SpectrumStats,
  Fit,
  LambdaCScan,
};

std::string to_string(ExperimentKind k);
ExperimentKind parse_experiment_kind(std::string_view s);

struct TimeGrid {
  double t_max = 10.0;
  int n_points = 101;
  bool log_spacing = false;
  double t_min = 0.01;

  std::vector<double> build() const;
};

/// "Z0", "X3", "Y11".
SitePauli parse_site_pauli(std::string_view s);

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::QuenchEntropy;
  ModelSpec model;
  std::vector<std::pair<std::string, std::vector<std::string>>> sweep;
  TimeGrid t_grid;
  std::uint64_t master_seed = 0;
  std::vector<std::uint64_t> seeds{0};
  std::filesystem::path output_dir = "ringstar_out";
  int workers = 1;
  KrylovParams krylov;

  SitePauli v{0, Pauli::Z};
  SitePauli w{1, Pauli::Z};
  std::vector<int> w_sites;
  std::string otoc_method = "auto";
  int samples = 0;

  SitePauli op{0, Pauli::X};
  TraceMode trace_mode = TraceMode::HaarTypicality;
  std::optional<double> t0;

  InitialState::Kind initial = InitialState::Kind::PlusY;
  std::optional<Bipartition> bipartition;

  std::optional<std::size_t> ratio_window = kDefaultRatioWindow;

  std::string fit_model = "power_law";
  std::vector<std::filesystem::path> fit_inputs;
  std::optional<FitWindow> fit_window;
  CosineFitOptions cosine;

  std::vector<int> scan_L;
  std::vector<double> scan_lambda;
  std::vector<double> scan_h_c;
  std::optional<double> t_star;

  /// The text the config was parsed from; echoed and hashed in the manifest.
  std::string source;

  /// Throws UsageError on inconsistent settings.
  void validate() const;
};

ExperimentConfig parse_experiment_config(std::string_view text);
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

struct JobResult {
  /// Sweep values of this job, in sweep order.
  std::vector<std::pair<std::string, std::string>> point;
  ModelSpec spec;
  std::optional<std::uint64_t> seed;
  std::vector<TimeSeries> series;
  std::vector<RatioReport> ratios;
  std::vector<FitResult> fits;
  /// Files written, relative to the output directory.
  std::vector<std::string> files;
};

struct RunResult {
  std::vector<JobResult> jobs;
  /// Aggregate files (lambda_c tables, fit summaries), relative paths.
  std::vector<std::string> extra_files;
  std::optional<LambdaScaling> scaling;
  double wall_seconds = 0.0;
};

/// Runs every job on a pool of `config.workers` threads and writes the CSV and
/// JSON artifacts into config.output_dir. No manifest is written.
RunResult run_experiment(const ExperimentConfig& config);

/// Git blob hash: SHA-1 of "blob <size>\0" followed by the content.
std::string git_blob_sha1(std::string_view content);

/// Writes `content` to a temporary sibling and renames it into place.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

struct ManifestInfo {
  std::string command;
  std::string config_text;
  std::uint64_t master_seed = 0;
  int workers = 1;
  double wall_seconds = 0.0;
  std::vector<std::string> deviations;
};

/// manifest.json in `dir` listing every file with its blob hash.
void write_manifest(const std::filesystem::path& dir, const std::vector<std::string>& files,
                    const ManifestInfo& info);

/// Figure ids accepted by reproduce.
const std::vector<std::string>& figure_ids();

struct ReproduceOptions {
  std::filesystem::path output_dir = "ringstar_out";
  int workers = 1;
  std::uint64_t master_seed = 0;
};

/// Runs the canned desk-scale recipe for one figure into output_dir/<figure>,
/// with a manifest recording the size reductions.
void reproduce(std::string_view figure, const ReproduceOptions& opts);

}  // namespace ringstar
