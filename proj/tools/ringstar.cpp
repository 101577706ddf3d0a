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

// ringstar <experiment|reproduce> --config <file> [--workers N] [--output DIR] [--seed S]

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "ringstar/error.hpp"
#include "ringstar/experiment.hpp"
#include "ringstar/kv_config.hpp"
#include "ringstar/numfmt.hpp"

namespace {

int fail(int code, const char* kind, const std::string& message) {
  nlohmann::ordered_json j;
  j["error"] = kind;
  j["message"] = message;
  j["exit_code"] = code;
  std::cerr << j.dump() << '\n';
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ring-star Ising model simulations"};
  app.require_subcommand(1);

  std::string config_path;
  int workers = 0;
  std::string output;
  std::uint64_t seed = 0;
  bool seed_set = false;

  auto* exp = app.add_subcommand("experiment", "Run the experiment described by a config file");
  exp->add_option("--config", config_path, "Config file")->required();

  std::string figure;
  auto* rep = app.add_subcommand("reproduce", "Regenerate the data behind one figure");
  rep->add_option("figure", figure, "Figure id")->check(CLI::IsMember(ringstar::figure_ids()));
  rep->add_option("--config", config_path, "Config file with `figure = <id>`");

  for (auto* sub : {exp, rep}) {
    sub->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--output", output, "Output directory");
    sub->add_option_function<std::uint64_t>(
        "--seed", [&](const std::uint64_t& s) { seed = s; seed_set = true; }, "Master seed");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail(2, "usage", e.what());
  }

  try {
    if (exp->parsed()) {
      auto cfg = ringstar::load_experiment_config(config_path);
      if (workers > 0) cfg.workers = workers;
      if (!output.empty()) cfg.output_dir = output;
      if (seed_set) cfg.master_seed = seed;
      const auto run = ringstar::run_experiment(cfg);
      std::vector<std::string> files;
      for (const auto& job : run.jobs) files.insert(files.end(), job.files.begin(), job.files.end());
      files.insert(files.end(), run.extra_files.begin(), run.extra_files.end());
      ringstar::ManifestInfo info;
      info.command = "experiment";
      info.config_text = cfg.source;
      info.master_seed = cfg.master_seed;
      info.workers = cfg.workers;
      info.wall_seconds = run.wall_seconds;
      ringstar::write_manifest(cfg.output_dir, files, info);
      std::cout << cfg.output_dir.string() << "/manifest.json\n";
      return 0;
    }
    ringstar::ReproduceOptions opts;
    if (!config_path.empty()) {
      const auto doc = ringstar::parse_kv([&] {
        std::ifstream in(config_path);
        if (!in) throw ringstar::UsageError("cannot read config " + config_path);
        return std::string(std::istreambuf_iterator<char>(in), {});
      }());
      for (const auto& e : doc.entries) {
        if (e.key == "figure" && figure.empty()) {
          figure = e.scalar();
        } else if (e.key == "workers") {
          opts.workers = static_cast<int>(ringstar::parse_int(e.scalar()));
        } else if (e.key == "output_dir") {
          opts.output_dir = e.scalar();
        } else if (e.key == "seed") {
          opts.master_seed = static_cast<std::uint64_t>(ringstar::parse_int(e.scalar()));
        } else if (e.key != "figure") {
          throw ringstar::UsageError("unknown reproduce config key '" + e.key + "'");
        }
      }
    }
    if (figure.empty()) throw ringstar::UsageError("reproduce needs a figure id");
    if (workers > 0) opts.workers = workers;
    if (!output.empty()) opts.output_dir = output;
    if (seed_set) opts.master_seed = seed;
    ringstar::reproduce(figure, opts);
    std::cout << (opts.output_dir / figure).string() << "/manifest.json\n";
    return 0;
  } catch (const ringstar::UsageError& e) {
    return fail(2, "usage", e.what());
  } catch (const ringstar::ResourceError& e) {
    return fail(3, "resource", e.what());
  } catch (const ringstar::NumericalError& e) {
    return fail(4, "numerical", e.what());
  } catch (const std::exception& e) {
    return fail(1, "internal", e.what());
  }
}
