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

#include "ringstar/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <exception>
#include <functional>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include <omp.h>
#include <openssl/evp.h>

#include <Eigen/Core>

#include "json.hpp"
#include "ringstar/error.hpp"
#include "ringstar/kv_config.hpp"
#include "ringstar/numfmt.hpp"
#include "ringstar/star.hpp"

extern "C" void openblas_set_num_threads(int);

namespace ringstar {
namespace {

std::uint64_t parse_u64(std::string_view s) {
  std::uint64_t v = 0;
  const auto* end = s.data() + s.size();
  const auto [p, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc{} || p != end) throw UsageError("expected an unsigned integer, got '" + std::string(s) + "'");
  return v;
}

bool parse_bool(std::string_view s) {
  if (s == "true") return true;
  if (s == "false") return false;
  throw UsageError("expected true or false, got '" + std::string(s) + "'");
}

int parse_small_int(std::string_view s) { return static_cast<int>(parse_int(s)); }

std::vector<std::string> list_of(const KvEntry& e) { return e.values; }

[[noreturn]] void bad_key(const KvEntry& e) {
  throw UsageError("unknown config key '" + e.key + "' on line " + std::to_string(e.line));
}

std::string section_key(const std::string& key, std::string_view section) {
  if (key.size() > section.size() + 1 && key.compare(0, section.size(), section) == 0 && key[section.size()] == '.') {
    return key.substr(section.size() + 1);
  }
  return {};
}

bool uses_seed(const ExperimentConfig& c) {
  switch (c.kind) {
    case ExperimentKind::QuenchEntropy:
      return c.initial == InitialState::Kind::Haar;
    case ExperimentKind::OtocMap:
    case ExperimentKind::OtocCurve:
      return c.otoc_method != "exact_trace";
    case ExperimentKind::Autocorr:
      return c.trace_mode == TraceMode::HaarTypicality;
    default:
      return false;
  }
}

DynamicsOptions dynamics_options(const ExperimentConfig& c) {
  DynamicsOptions o;
  o.krylov = c.krylov;
  if (c.otoc_method == "krylov") o.method = OtocMethod::Krylov;
  if (c.otoc_method == "spectral") o.method = OtocMethod::Spectral;
  return o;
}

// Every item of the sweep product, in row-major order of the sweep keys.
std::vector<std::vector<std::pair<std::string, std::string>>> sweep_points(const ExperimentConfig& c) {
  std::vector<std::vector<std::pair<std::string, std::string>>> points{{}};
  for (const auto& [key, values] : c.sweep) {
    std::vector<std::vector<std::pair<std::string, std::string>>> next;
    for (const auto& p : points) {
      for (const auto& v : values) {
        auto q = p;
        q.emplace_back(key, v);
        next.push_back(std::move(q));
      }
    }
    points = std::move(next);
  }
  return points;
}

std::string job_stem(const ExperimentConfig& c, const std::vector<std::pair<std::string, std::string>>& point,
                     std::optional<std::uint64_t> seed_label) {
  std::string s = to_string(c.kind);
  for (const auto& [k, v] : point) s += "_" + k + "=" + v;
  if (seed_label) s += "_seed" + std::to_string(*seed_label);
  return s;
}

void run_pool(std::size_t n_jobs, int workers, const std::function<void(std::size_t)>& fn) {
  const int n_threads = std::max(1, std::min<int>(workers, static_cast<int>(n_jobs)));
  const int omp_threads = std::max(1, omp_get_max_threads() / n_threads);
  std::atomic<std::size_t> next{0};
  std::mutex mu;
  std::size_t failed_index = n_jobs;
  std::exception_ptr failure;
  auto worker = [&] {
    omp_set_num_threads(omp_threads);
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n_jobs) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(mu);
        if (i < failed_index) {
          failed_index = i;
          failure = std::current_exception();
        }
      }
    }
  };
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int k = 0; k < n_threads; ++k) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
}

std::string wide_csv(const std::vector<TimeSeries>& cols, const std::vector<std::string>& names) {
  std::ostringstream os;
  for (const auto& [k, v] : cols.front().metadata) {
    if (k != "W") os << "# " << k << '=' << v << '\n';
  }
  os << 't';
  for (const auto& n : names) os << ',' << n;
  os << '\n';
  for (std::size_t i = 0; i < cols.front().size(); ++i) {
    os << format_g17(cols.front().times[i]);
    for (const auto& c : cols) os << ',' << format_g17(c.values[i]);
    os << '\n';
  }
  return os.str();
}

std::string site_name(SitePauli p) { return std::string(1, pauli_char(p.axis)) + std::to_string(p.site); }

}  // namespace

std::string to_string(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::QuenchEntropy:
      return "quench_entropy";
    case ExperimentKind::OtocMap:
      return "otoc_map";
    case ExperimentKind::OtocCurve:
      return "otoc_curve";
    case ExperimentKind::Autocorr:
      return "autocorr";
    case ExperimentKind::StarOracle:
      return "star_oracle";
    case ExperimentKind::SpectrumStats:
      return "spectrum_stats";
    case ExperimentKind::Fit:
      return "fit";
    case ExperimentKind::LambdaCScan:
      return "lambda_c_scan";
  }
  return "unknown";
}

ExperimentKind parse_experiment_kind(std::string_view s) {
  for (auto k : {ExperimentKind::QuenchEntropy, ExperimentKind::OtocMap, ExperimentKind::OtocCurve,
                 ExperimentKind::Autocorr, ExperimentKind::StarOracle, ExperimentKind::SpectrumStats,
                 ExperimentKind::Fit, ExperimentKind::LambdaCScan}) {
    if (to_string(k) == s) return k;
  }
  throw UsageError("unknown experiment '" + std::string(s) + "'");
}

std::vector<double> TimeGrid::build() const {
  return log_spacing ? log_grid(t_min, t_max, n_points) : linear_grid(t_max, n_points);
}

SitePauli parse_site_pauli(std::string_view s) {
  if (s.size() < 2) throw UsageError("expected an operator like Z0, got '" + std::string(s) + "'");
  const Pauli p = pauli_from_char(s.front());
  if (p == Pauli::I) throw UsageError("operator must be X, Y or Z");
  return {parse_small_int(s.substr(1)), p};
}

void ExperimentConfig::validate() const {
  model.validate();
  krylov.validate();
  if (workers < 1) throw UsageError("workers must be >= 1");
  if (seeds.empty()) throw UsageError("seeds must not be empty");
  t_grid.build();
  for (const auto& [key, values] : sweep) {
    if (values.empty()) throw UsageError("sweep." + key + " is empty");
    for (const auto& v : values) {
      ModelSpec m = model;
      if (!set_model_field(m, key, v)) throw UsageError("sweep key '" + key + "' is not a model parameter");
      m.validate();
    }
  }
  const int n = model.n_sites();
  auto site_ok = [&](SitePauli p, const char* what) {
    if (p.site < 0 || p.site >= n) throw UsageError(std::string(what) + " site out of range");
  };
  const bool sweeps_L = std::any_of(sweep.begin(), sweep.end(), [](const auto& s) { return s.first == "L"; });
  if (!sweeps_L) {
    if (kind == ExperimentKind::OtocCurve || kind == ExperimentKind::OtocMap) {
      site_ok(v, "otoc.v");
      site_ok(w, "otoc.w");
      for (int s : w_sites) site_ok({s, w.axis}, "otoc.w_sites");
    }
    if (kind == ExperimentKind::Autocorr) site_ok(op, "autocorr.op");
  }
  if (otoc_method != "auto" && otoc_method != "krylov" && otoc_method != "spectral" && otoc_method != "exact_trace") {
    throw UsageError("otoc.method must be auto, krylov, spectral or exact_trace");
  }
  if (samples < 0) throw UsageError("samples must be >= 0");
  if (kind == ExperimentKind::Fit) {
    if (fit_inputs.empty()) throw UsageError("fit needs fit.input files");
    if (fit_model != "decaying_cosine" && fit_model != "power_law" && fit_model != "loglinear" &&
        fit_model != "log_vs_power") {
      throw UsageError("unknown fit.model '" + fit_model + "'");
    }
  }
  if (kind == ExperimentKind::LambdaCScan) {
    if (scan_L.empty() || scan_lambda.size() < 8) throw UsageError("scan needs scan.L and at least 8 scan.lambda values");
    if (!sweep.empty()) throw UsageError("lambda_c_scan takes its grid from scan.*, not sweep.*");
  }
  if (kind == ExperimentKind::Fit && !sweep.empty()) throw UsageError("fit does not take a sweep");
}

ExperimentConfig parse_experiment_config(std::string_view text) {
  ExperimentConfig c;
  c.source = std::string(text);
  bool have_kind = false;
  std::optional<double> fit_t_min, fit_t_max;
  for (const auto& e : parse_kv(text).entries) {
    const std::string& k = e.key;
    std::string sub;
    if (k == "experiment") {
      c.kind = parse_experiment_kind(e.scalar());
      have_kind = true;
    } else if (k == "seed") {
      c.master_seed = parse_u64(e.scalar());
    } else if (k == "seeds") {
      c.seeds.clear();
      for (const auto& v : list_of(e)) c.seeds.push_back(parse_u64(v));
    } else if (k == "workers") {
      c.workers = parse_small_int(e.scalar());
    } else if (k == "output_dir") {
      c.output_dir = e.scalar();
    } else if (!(sub = section_key(k, "model")).empty()) {
      if (!set_model_field(c.model, sub, e.scalar())) bad_key(e);
    } else if (!(sub = section_key(k, "sweep")).empty()) {
      c.sweep.emplace_back(sub, list_of(e));
    } else if (!(sub = section_key(k, "t_grid")).empty()) {
      if (sub == "t_max") {
        c.t_grid.t_max = parse_double(e.scalar());
      } else if (sub == "n_points") {
        c.t_grid.n_points = parse_small_int(e.scalar());
      } else if (sub == "t_min") {
        c.t_grid.t_min = parse_double(e.scalar());
      } else if (sub == "spacing") {
        if (e.scalar() != "linear" && e.scalar() != "log") throw UsageError("t_grid.spacing must be linear or log");
        c.t_grid.log_spacing = e.scalar() == "log";
      } else {
        bad_key(e);
      }
    } else if (!(sub = section_key(k, "krylov")).empty()) {
      if (sub == "subspace_dim") {
        c.krylov.subspace_dim = parse_small_int(e.scalar());
      } else if (sub == "dt") {
        c.krylov.dt = parse_double(e.scalar());
      } else if (sub == "tolerance") {
        c.krylov.tolerance = parse_double(e.scalar());
      } else {
        bad_key(e);
      }
    } else if (!(sub = section_key(k, "otoc")).empty()) {
      if (sub == "v") {
        c.v = parse_site_pauli(e.scalar());
      } else if (sub == "w") {
        c.w = parse_site_pauli(e.scalar());
      } else if (sub == "w_sites") {
        c.w_sites.clear();
        for (const auto& v : list_of(e)) c.w_sites.push_back(parse_small_int(v));
      } else if (sub == "method") {
        c.otoc_method = e.scalar();
      } else if (sub == "samples") {
        c.samples = parse_small_int(e.scalar());
      } else {
        bad_key(e);
      }
    } else if (!(sub = section_key(k, "autocorr")).empty()) {
      if (sub == "op") {
        c.op = parse_site_pauli(e.scalar());
      } else if (sub == "mode") {
        if (e.scalar() == "haar") {
          c.trace_mode = TraceMode::HaarTypicality;
        } else if (e.scalar() == "exact") {
          c.trace_mode = TraceMode::ExactTrace;
        } else {
          throw UsageError("autocorr.mode must be haar or exact");
        }
      } else if (sub == "samples") {
        c.samples = parse_small_int(e.scalar());
      } else if (sub == "t0") {
        c.t0 = parse_double(e.scalar());
      } else {
        bad_key(e);
      }
    } else if (!(sub = section_key(k, "quench")).empty()) {
      if (sub == "initial") {
        if (e.scalar() == "plus_y") {
          c.initial = InitialState::Kind::PlusY;
        } else if (e.scalar() == "haar") {
          c.initial = InitialState::Kind::Haar;
        } else {
          throw UsageError("quench.initial must be plus_y or haar");
        }
      } else if (sub == "subsystem_a") {
        if (!c.bipartition) c.bipartition = Bipartition{};
        c.bipartition->ring_sites_a.clear();
        for (const auto& v : list_of(e)) c.bipartition->ring_sites_a.push_back(parse_small_int(v));
      } else if (sub == "cqubit_in_a") {
        if (!c.bipartition) c.bipartition = Bipartition::half_chain(c.model.L);
        c.bipartition->cqubit_in_a = parse_bool(e.scalar());
      } else {
        bad_key(e);
      }
    } else if (!(sub = section_key(k, "spectrum")).empty()) {
      if (sub != "window") bad_key(e);
      if (e.scalar() == "all") {
        c.ratio_window.reset();
      } else {
        c.ratio_window = static_cast<std::size_t>(parse_u64(e.scalar()));
      }
    } else if (!(sub = section_key(k, "fit")).empty()) {
      if (sub == "model") {
        c.fit_model = e.scalar();
      } else if (sub == "input") {
        c.fit_inputs.clear();
        for (const auto& v : list_of(e)) c.fit_inputs.emplace_back(v);
      } else if (sub == "t_min") {
        fit_t_min = parse_double(e.scalar());
      } else if (sub == "t_max") {
        fit_t_max = parse_double(e.scalar());
      } else if (sub == "smooth") {
        c.cosine.smooth = parse_bool(e.scalar());
      } else if (sub == "smoothing_period") {
        c.cosine.smoothing_period = parse_double(e.scalar());
      } else {
        bad_key(e);
      }
    } else if (!(sub = section_key(k, "scan")).empty()) {
      if (sub == "L") {
        for (const auto& v : list_of(e)) c.scan_L.push_back(parse_small_int(v));
      } else if (sub == "lambda") {
        for (const auto& v : list_of(e)) c.scan_lambda.push_back(parse_double(v));
      } else if (sub == "h_c") {
        for (const auto& v : list_of(e)) c.scan_h_c.push_back(parse_double(v));
      } else if (sub == "t_star") {
        if (e.scalar() != "auto") c.t_star = parse_double(e.scalar());
      } else {
        bad_key(e);
      }
    } else {
      bad_key(e);
    }
  }
  if (!have_kind) throw UsageError("config must set experiment");
  if (fit_t_min || fit_t_max) {
    c.fit_window = FitWindow{fit_t_min.value_or(-std::numeric_limits<double>::infinity()),
                             fit_t_max.value_or(std::numeric_limits<double>::infinity())};
  }
  if (c.scan_h_c.empty()) c.scan_h_c.push_back(c.model.h_c);
  c.validate();
  return c;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read config " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_experiment_config(ss.str());
}

std::string git_blob_sha1(std::string_view content) {
  const std::string header = "blob " + std::to_string(content.size()) + std::string(1, '\0');
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (!ctx) throw std::runtime_error("EVP_MD_CTX_new failed");
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  const bool ok = EVP_DigestInit_ex(ctx, EVP_sha1(), nullptr) == 1 &&
                  EVP_DigestUpdate(ctx, header.data(), header.size()) == 1 &&
                  EVP_DigestUpdate(ctx, content.data(), content.size()) == 1 &&
                  EVP_DigestFinal_ex(ctx, md, &len) == 1;
  EVP_MD_CTX_free(ctx);
  if (!ok) throw std::runtime_error("SHA-1 digest failed");
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp" + std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ResourceError("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw ResourceError("short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

void write_manifest(const std::filesystem::path& dir, const std::vector<std::string>& files,
                    const ManifestInfo& info) {
  nlohmann::ordered_json j;
  j["command"] = info.command;
  j["config"] = info.config_text;
  j["config_sha1"] = git_blob_sha1(info.config_text);
  j["master_seed"] = info.master_seed;
  j["workers"] = info.workers;
  j["wall_seconds"] = info.wall_seconds;
  if (!info.deviations.empty()) j["deviations"] = info.deviations;
  j["files"] = nlohmann::ordered_json::array();
  for (const auto& f : files) {
    std::ifstream in(dir / f, std::ios::binary);
    if (!in) throw ResourceError("missing artifact " + f);
    std::ostringstream ss;
    ss << in.rdbuf();
    const std::string body = ss.str();
    j["files"].push_back({{"path", f}, {"sha1", git_blob_sha1(body)}, {"bytes", body.size()}});
  }
  write_file_atomic(dir / "manifest.json", j.dump(2) + "\n");
}

RunResult run_experiment(const ExperimentConfig& c) {
  c.validate();
  const auto start = std::chrono::steady_clock::now();
  Eigen::setNbThreads(1);
  openblas_set_num_threads(1);
  std::filesystem::create_directories(c.output_dir);
  RunResult result;
  const auto grid = c.t_grid.build();
  const DynamicsOptions dyn = dynamics_options(c);

  auto emit = [&](JobResult& job, const std::string& name, const std::string& content) {
    write_file_atomic(c.output_dir / name, content);
    job.files.push_back(name);
  };

  if (c.kind == ExperimentKind::Fit) {
    result.jobs.resize(c.fit_inputs.size());
    run_pool(c.fit_inputs.size(), c.workers, [&](std::size_t i) {
      std::ifstream in(c.fit_inputs[i]);
      if (!in) throw UsageError("cannot read fit input " + c.fit_inputs[i].string());
      const TimeSeries s = read_csv(in);
      const FitWindow w = c.fit_window.value_or(FitWindow{s.times.front(), s.times.back()});
      JobResult& job = result.jobs[i];
      job.point = {{"input", c.fit_inputs[i].filename().string()}};
      std::string body;
      if (c.fit_model == "log_vs_power") {
        const GrowthComparison g = compare_log_vs_power(s, w);
        job.fits = {g.loglinear, g.power_law};
        body = "{\"loglinear\":" + to_json(g.loglinear) + ",\"power_law\":" + to_json(g.power_law) +
               ",\"loglinear_better\":" + (g.loglinear_better ? "true" : "false") + "}";
      } else {
        FitResult f = c.fit_model == "decaying_cosine" ? fit_decaying_cosine(s, w, c.cosine)
                      : c.fit_model == "loglinear"     ? fit_loglinear(s, w)
                                                       : fit_power_law(s, w);
        body = to_json(f);
        job.fits = {std::move(f)};
      }
      emit(job, c.fit_inputs[i].stem().string() + "_fit.json", body + "\n");
    });
  } else if (c.kind == ExperimentKind::LambdaCScan) {
    // Reference curves at lambda = 0 fix t* per (L, h_c) unless given.
    struct Key {
      int L;
      double h_c;
    };
    std::vector<Key> keys;
    for (int L : c.scan_L) {
      for (double hc : c.scan_h_c) keys.push_back({L, hc});
    }
    std::vector<double> t_star(keys.size(), c.t_star.value_or(0.0));
    const Bipartition part = c.bipartition.value_or(Bipartition{});
    auto part_for = [&](int L) { return c.bipartition ? part : Bipartition::half_chain(L); };
    auto spec_for = [&](int L, double hc, double lam) {
      ModelSpec m = c.model;
      m.L = L;
      m.h_c = hc;
      m.lambda = lam;
      m.validate();
      return m;
    };
    if (!c.t_star) {
      std::vector<JobResult> refs(keys.size());
      run_pool(keys.size(), c.workers, [&](std::size_t i) {
        const ModelSpec m = spec_for(keys[i].L, keys[i].h_c, 0.0);
        TimeSeries s = quench_entropy_trajectory(m, {c.initial, 0}, part_for(m.L), grid, c.krylov);
        t_star[i] = select_t_star(s);
        s.set_meta("t_star", format_shortest(t_star[i]));
        refs[i].spec = m;
        emit(refs[i], "lambda_c_reference_L=" + std::to_string(m.L) + "_h_c=" + format_shortest(m.h_c) + ".csv",
             to_csv(s));
        refs[i].series.push_back(std::move(s));
      });
      for (auto& r : refs) result.jobs.push_back(std::move(r));
    }
    const std::size_t nl = c.scan_lambda.size();
    std::vector<double> values(keys.size() * nl);
    run_pool(values.size(), c.workers, [&](std::size_t i) {
      const std::size_t ki = i / nl;
      const ModelSpec m = spec_for(keys[ki].L, keys[ki].h_c, c.scan_lambda[i % nl]);
      const std::vector<double> at{t_star[ki]};
      values[i] = quench_entropy_trajectory(m, {c.initial, 0}, part_for(m.L), at, c.krylov).values.front();
    });
    std::ostringstream pts;
    pts << "L,h_c,lambda,t_star,S\n";
    std::vector<LambdaCurve> curves;
    for (std::size_t ki = 0; ki < keys.size(); ++ki) {
      LambdaCurve curve{keys[ki].L, keys[ki].h_c, c.scan_lambda, {}};
      for (std::size_t j = 0; j < nl; ++j) {
        const double v = values[ki * nl + j];
        curve.values.push_back(v);
        pts << keys[ki].L << ',' << format_g17(keys[ki].h_c) << ',' << format_g17(c.scan_lambda[j]) << ','
            << format_g17(t_star[ki]) << ',' << format_g17(v) << '\n';
      }
      curves.push_back(std::move(curve));
    }
    write_file_atomic(c.output_dir / "lambda_c_points.csv", pts.str());
    result.extra_files.push_back("lambda_c_points.csv");
    nlohmann::ordered_json j;
    j["peaks"] = nlohmann::ordered_json::array();
    try {
      LambdaScaling sc = find_lambda_c(curves);
      for (const auto& p : sc.peaks) {
        j["peaks"].push_back({{"L", p.L}, {"h_c", p.h_c}, {"lambda_c", p.lambda_c}, {"at_edge", p.at_edge}});
      }
      j["gamma"] = sc.gamma;
      j["gamma_stderr"] = sc.gamma_stderr;
      if (sc.kappa) {
        j["kappa"] = *sc.kappa;
        j["kappa_stderr"] = *sc.kappa_stderr;
      }
      j["log_prefactor"] = sc.log_prefactor;
      result.scaling = std::move(sc);
    } catch (const FitError& e) {
      j["error"] = e.what();
    }
    write_file_atomic(c.output_dir / "lambda_c.json", j.dump(2) + "\n");
    result.extra_files.push_back("lambda_c.json");
  } else {
    struct Job {
      std::vector<std::pair<std::string, std::string>> point;
      std::optional<std::uint64_t> seed_label;
    };
    std::vector<Job> jobs;
    const bool seeded = uses_seed(c);
    for (auto& p : sweep_points(c)) {
      if (seeded) {
        for (auto s : c.seeds) jobs.push_back({p, s});
      } else {
        jobs.push_back({p, std::nullopt});
      }
    }
    result.jobs.resize(jobs.size());
    run_pool(jobs.size(), c.workers, [&](std::size_t i) {
      const Job& jb = jobs[i];
      JobResult& job = result.jobs[i];
      job.point = jb.point;
      ModelSpec m = c.model;
      for (const auto& [k, v] : jb.point) set_model_field(m, k, v);
      m.validate();
      job.spec = m;
      std::uint64_t seed = 0;
      if (jb.seed_label) {
        seed = derive_seed(c.master_seed, *jb.seed_label);
        job.seed = seed;
      }
      const std::string stem = job_stem(c, jb.point, jb.seed_label);
      auto tag = [&](TimeSeries& s) {
        for (const auto& [k, v] : jb.point) s.set_meta("sweep." + k, v);
        if (jb.seed_label) {
          s.set_meta("seed_label", std::to_string(*jb.seed_label));
          s.set_meta("job_seed", std::to_string(seed));
        }
      };
      switch (c.kind) {
        case ExperimentKind::QuenchEntropy: {
          const Bipartition part = c.bipartition.value_or(Bipartition::half_chain(m.L));
          TimeSeries s = quench_entropy_trajectory(m, {c.initial, seed}, part, grid, c.krylov);
          tag(s);
          emit(job, stem + ".csv", to_csv(s));
          job.series.push_back(std::move(s));
          break;
        }
        case ExperimentKind::OtocCurve: {
          TimeSeries s = c.otoc_method == "exact_trace"
                             ? otoc_exact_trace(m, c.v, c.w, grid, dyn.limits)
                             : otoc_haar(m, c.v, c.w, grid, c.samples > 0 ? c.samples : default_haar_samples(m.n_sites()),
                                         seed, dyn);
          tag(s);
          emit(job, stem + ".csv", to_csv(s));
          job.series.push_back(std::move(s));
          break;
        }
        case ExperimentKind::OtocMap: {
          std::vector<SitePauli> ws;
          if (c.w_sites.empty()) {
            for (int site = 0; site < m.n_sites(); ++site) ws.push_back({site, c.w.axis});
          } else {
            for (int site : c.w_sites) ws.push_back({site, c.w.axis});
          }
          for (const auto& w : ws) {
            if (w.site >= m.n_sites()) throw UsageError("otoc.w_sites entry out of range");
          }
          std::vector<TimeSeries> cols;
          if (c.otoc_method == "exact_trace") {
            for (const auto& w : ws) cols.push_back(otoc_exact_trace(m, c.v, w, grid, dyn.limits));
          } else {
            const int ns = c.samples > 0 ? c.samples : default_haar_samples(m.n_sites());
            for (int k = 0; k < ns; ++k) {
              const auto psi = state_haar(m.n_sites(), derive_seed(seed, static_cast<std::uint64_t>(k)));
              auto part = otoc_multi(m, psi, c.v, ws, grid, dyn);
              if (k == 0) {
                cols = std::move(part);
              } else {
                for (std::size_t a = 0; a < cols.size(); ++a) {
                  for (std::size_t b = 0; b < grid.size(); ++b) cols[a].values[b] += part[a].values[b];
                }
              }
            }
            for (auto& col : cols) {
              for (double& x : col.values) x /= ns;
              col.set_meta("samples", std::to_string(ns));
            }
          }
          std::vector<std::string> names;
          for (const auto& w : ws) names.push_back(site_name(w));
          for (auto& col : cols) tag(col);
          emit(job, stem + ".csv", wide_csv(cols, names));
          job.series = std::move(cols);
          break;
        }
        case ExperimentKind::Autocorr: {
          TimeSeries s = two_time_autocorrelation(m, c.op, grid, c.trace_mode, c.samples, seed, dyn);
          if (c.t0) s.set_meta("long_time_average", format_g17(long_time_average(s, *c.t0)));
          tag(s);
          emit(job, stem + ".csv", to_csv(s));
          job.series.push_back(std::move(s));
          break;
        }
        case ExperimentKind::StarOracle: {
          TimeSeries s = star_autocorrelation_series({m.L, m.lambda, m.h_c}, grid);
          if (c.t0) s.set_meta("long_time_average", format_g17(long_time_average(s, *c.t0)));
          tag(s);
          emit(job, stem + ".csv", to_csv(s));
          job.series.push_back(std::move(s));
          break;
        }
        case ExperimentKind::SpectrumStats: {
          job.ratios = sector_ratio_scan(std::span<const ModelSpec>(&m, 1), c.ratio_window, dyn.limits);
          std::ostringstream os;
          write_ratio_csv_header(os);
          for (const auto& r : job.ratios) write_ratio_csv_row(os, r);
          emit(job, stem + ".csv", os.str());
          break;
        }
        case ExperimentKind::Fit:
        case ExperimentKind::LambdaCScan:
          break;
      }
    });
  }
  result.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace ringstar
