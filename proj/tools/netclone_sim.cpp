/* Copyright 2026-present The netclone-sim Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *   http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


// netclone_sim: runs a configured sweep and writes one CSV row per
// (scheme, load, seed), or summarizes an existing results file.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "netclone.hpp"

namespace {

namespace fs = std::filesystem;
using namespace netclone;

constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

void note(const std::string& msg) { std::cerr << "[netclone_sim] " << msg << '\n'; }

netclone::FailureWindow parse_failure(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw ConfigError("--failure: expected START:END in seconds");
  try {
    const double down = std::stod(spec.substr(0, colon));
    const double up = std::stod(spec.substr(colon + 1));
    return {kTimeZero + from_seconds(down), kTimeZero + from_seconds(up)};
  } catch (const std::logic_error&) {
    throw ConfigError("--failure: expected START:END in seconds, got '" + spec + "'");
  }
}

void check_output(const std::string& path, bool force) {
  if (fs::exists(path) && !force) {
    throw IoError("output '" + path + "' exists; pass --force to overwrite");
  }
}

std::ofstream open_output(const std::string& path) {
  const fs::path parent = fs::path(path).parent_path();
  std::error_code ec;
  if (!parent.empty()) fs::create_directories(parent, ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path + "'");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete-event simulator for in-switch request cloning"};
  std::string config_path, scheme, output, failure, summarize_path;
  std::optional<double> load, duration;
  std::optional<std::uint64_t> seed;
  bool force = false;
  app.add_option("--config", config_path, "experiment config file (INI)");
  app.add_option("--scheme", scheme, "run only this scheme");
  app.add_option("--load", load, "run only this load point (config units)");
  app.add_option("--seed", seed, "run only this seed");
  app.add_option("--duration", duration, "virtual seconds per run");
  app.add_option("--output", output, "CSV path ('-' for standard output)");
  app.add_flag("--force", force, "overwrite an existing output file");
  app.add_option("--failure", failure, "switch outage window START:END in seconds");
  app.add_option("--summarize", summarize_path, "print a summary table of a results CSV");
  CLI11_PARSE(app, argc, argv);

  try {
    if (!summarize_path.empty()) {
      std::ifstream in(summarize_path, std::ios::binary);
      if (!in) throw IoError("cannot open '" + summarize_path + "'");
      std::cout << format_summary(summarize(read_csv(in)));
      return 0;
    }
    if (config_path.empty()) throw ConfigError("--config or --summarize is required");

    ExperimentConfig x = load_config(config_path);
    if (!scheme.empty()) {
      auto s = parse_scheme(scheme);
      if (!s) throw ConfigError("--scheme: unknown scheme '" + scheme + "'");
      x.schemes = {*s};
    }
    if (load) x.loads = {*load};
    if (seed) x.seeds = {*seed};
    if (duration) {
      if (!(*duration > 0)) throw ConfigError("--duration: must be positive");
      x.base.duration = from_seconds(*duration);
    }
    if (!failure.empty()) x.base.failure = parse_failure(failure);
    if (!output.empty()) x.output = output;
    x.validate();

    const bool to_stdout = x.output.empty() || x.output == "-";
    if (!to_stdout) check_output(x.output, force);
    if (!x.timeline_output.empty()) check_output(x.timeline_output, force);

    const std::vector<MetricsRecord> rows = run_experiment(x, note);
    if (to_stdout) {
      write_csv(std::cout, rows);
    } else {
      std::ofstream file = open_output(x.output);
      write_csv(file, rows);
    }
    if (!x.timeline_output.empty()) {
      std::ofstream timeline = open_output(x.timeline_output);
      write_timeline_csv(timeline, rows);
    }
    if (!to_stdout) note("wrote " + std::to_string(rows.size()) + " rows to " + x.output);
    return 0;
  } catch (const ConfigError& e) {
    note(std::string("config error: ") + e.what());
    return kExitConfig;
  } catch (const BadWindow& e) {
    note(std::string("config error: ") + e.what());
    return kExitConfig;
  } catch (const IoError& e) {
    note(std::string("io error: ") + e.what());
    return kExitIo;
  } catch (const SchemaError& e) {
    note(std::string("schema error: ") + e.what());
    return kExitIo;
  } catch (const Error& e) {
    note(std::string("error: ") + e.what());
    return 1;
  }
}
