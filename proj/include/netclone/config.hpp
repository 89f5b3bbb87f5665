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

#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "netclone/engine.hpp"
#include "netclone/error.hpp"
#include "netclone/model.hpp"
#include "netclone/workload.hpp"

namespace netclone {

// A sweep: every (scheme, load, seed) combination over one cluster setup.
//
// Config file layout (INI; lists are comma separated):
//
//   [experiment]  schemes, loads, load_unit (fraction|rps), reference_rps,
//                 seeds, duration_s, warmup_fraction, drain_s, threads,
//                 output, timeline_output
//   [cluster]     servers, workers (one value or one per server),
//                 drop_counts_in_service, drop_cost_us
//   [workload]    distribution, jitter_p, jitter_factor
//   [network]     link_delay_us
//   [switch]      tables, slots, per_packet_delay_ns, recirc_delay_ns
//   [client]      per_packet_cost_us, dedupe_window
//   [coordinator] per_message_delay_us, per_worker
//   [failure]     down_s, up_s, timeline_bin_s
//   [saturation]  probe_s, iterations, stable_ratio
struct ExperimentConfig {
  std::vector<SchemeId> schemes = {SchemeId::Baseline, SchemeId::CClone, SchemeId::NetClone};
  std::vector<double> loads;
  // Loads are fractions of Baseline saturation unless this is false.
  bool loads_are_fractions = true;
  // Baseline saturation used to scale fractional loads. Measured when unset.
  std::optional<double> reference_rps;
  std::vector<std::uint64_t> seeds = {1};
  RunConfig base;
  SaturationSearch saturation;
  std::size_t threads = 0;
  std::string output;
  std::string timeline_output;

  void validate() const {
    if (schemes.empty()) throw ConfigError("experiment.schemes: must not be empty");
    if (loads.empty()) throw ConfigError("experiment.loads: must not be empty");
    for (double l : loads) {
      if (!(l > 0)) throw ConfigError("experiment.loads: every load must be positive");
    }
    if (seeds.empty()) throw ConfigError("experiment.seeds: must not be empty");
    if (reference_rps && !(*reference_rps > 0)) {
      throw ConfigError("experiment.reference_rps: must be positive");
    }
    if (!(saturation.stable_ratio > 0 && saturation.stable_ratio <= 1)) {
      throw ConfigError("saturation.stable_ratio: must be in (0,1]");
    }
    if (saturation.probe_duration <= SimDuration::zero()) {
      throw ConfigError("saturation.probe_s: must be positive");
    }
    for (SchemeId s : schemes) {
      RunConfig c = base;
      c.scheme = s;
      c.validate();
    }
  }
};

namespace config_detail {

namespace pt = boost::property_tree;

// Known keys per section; anything else is a typo and rejected.
inline const std::map<std::string, std::set<std::string>, std::less<>>& known_keys() {
  static const std::map<std::string, std::set<std::string>, std::less<>> keys = {
      {"experiment",
       {"schemes", "loads", "load_unit", "reference_rps", "seeds", "duration_s",
        "warmup_fraction", "drain_s", "threads", "output", "timeline_output"}},
      {"cluster", {"servers", "workers", "drop_counts_in_service", "drop_cost_us"}},
      {"workload", {"distribution", "jitter_p", "jitter_factor"}},
      {"network", {"link_delay_us"}},
      {"switch", {"tables", "slots", "per_packet_delay_ns", "recirc_delay_ns"}},
      {"client", {"per_packet_cost_us", "dedupe_window"}},
      {"coordinator", {"per_message_delay_us", "per_worker"}},
      {"failure", {"down_s", "up_s", "timeline_bin_s"}},
      {"saturation", {"probe_s", "iterations", "stable_ratio"}},
  };
  return keys;
}

class Reader {
 public:
  explicit Reader(const pt::ptree& tree) : tree_(tree) {}

  std::optional<std::string> raw(std::string_view section, std::string_view key) const {
    auto sec = tree_.get_child_optional(pt::ptree::path_type(std::string(section), '\0'));
    if (!sec) return std::nullopt;
    auto v = sec->get_optional<std::string>(pt::ptree::path_type(std::string(key), '\0'));
    if (!v) return std::nullopt;
    return std::string(detail::trim(*v));
  }

  std::optional<double> number(std::string_view section, std::string_view key) const {
    auto v = raw(section, key);
    if (!v) return std::nullopt;
    return parse(*v, section, key);
  }

  std::optional<std::uint64_t> integer(std::string_view section, std::string_view key) const {
    auto v = number(section, key);
    if (!v) return std::nullopt;
    if (*v < 0 || *v != static_cast<double>(static_cast<std::uint64_t>(*v))) {
      throw ConfigError(field(section, key) + ": expected a non-negative integer");
    }
    return static_cast<std::uint64_t>(*v);
  }

  std::optional<bool> boolean(std::string_view section, std::string_view key) const {
    auto v = raw(section, key);
    if (!v) return std::nullopt;
    if (*v == "true" || *v == "1" || *v == "yes") return true;
    if (*v == "false" || *v == "0" || *v == "no") return false;
    throw ConfigError(field(section, key) + ": expected true or false, got '" + *v + "'");
  }

  std::optional<std::vector<std::string>> list(std::string_view section,
                                               std::string_view key) const {
    auto v = raw(section, key);
    if (!v) return std::nullopt;
    std::vector<std::string> out;
    for (std::string_view part : detail::split(*v, ',')) {
      part = detail::trim(part);
      if (!part.empty()) out.emplace_back(part);
    }
    return out;
  }

  std::optional<std::vector<double>> numbers(std::string_view section,
                                             std::string_view key) const {
    auto items = list(section, key);
    if (!items) return std::nullopt;
    std::vector<double> out;
    for (const std::string& s : *items) out.push_back(parse(s, section, key));
    return out;
  }

  static std::string field(std::string_view section, std::string_view key) {
    return std::string(section) + "." + std::string(key);
  }

 private:
  static double parse(const std::string& s, std::string_view section, std::string_view key) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size()) {
      throw ConfigError(field(section, key) + ": expected a number, got '" + s + "'");
    }
    return v;
  }

  const pt::ptree& tree_;
};

inline void check_keys(const pt::ptree& tree) {
  const auto& known = known_keys();
  for (const auto& [section, body] : tree) {
    auto it = known.find(section);
    if (it == known.end()) throw ConfigError("unknown section [" + section + "]");
    for (const auto& [key, value] : body) {
      if (!it->second.contains(key)) {
        throw ConfigError("unknown key " + Reader::field(section, key));
      }
    }
  }
}

}  // namespace config_detail

inline ExperimentConfig parse_config(std::istream& in) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  config_detail::check_keys(tree);
  const config_detail::Reader r(tree);

  ExperimentConfig x;
  RunConfig& b = x.base;

  if (auto v = r.list("experiment", "schemes")) {
    x.schemes.clear();
    for (const std::string& name : *v) {
      auto s = parse_scheme(name);
      if (!s) throw ConfigError("experiment.schemes: unknown scheme '" + name + "'");
      x.schemes.push_back(*s);
    }
  }
  if (auto v = r.numbers("experiment", "loads")) x.loads = *v;
  if (auto v = r.raw("experiment", "load_unit")) {
    if (*v == "fraction") {
      x.loads_are_fractions = true;
    } else if (*v == "rps") {
      x.loads_are_fractions = false;
    } else {
      throw ConfigError("experiment.load_unit: expected 'fraction' or 'rps', got '" + *v + "'");
    }
  }
  if (auto v = r.number("experiment", "reference_rps")) x.reference_rps = *v;
  if (auto v = r.numbers("experiment", "seeds")) {
    x.seeds.clear();
    for (double s : *v) {
      if (s < 0 || s != static_cast<double>(static_cast<std::uint64_t>(s))) {
        throw ConfigError("experiment.seeds: seeds must be non-negative integers");
      }
      x.seeds.push_back(static_cast<std::uint64_t>(s));
    }
  }
  if (auto v = r.number("experiment", "duration_s")) {
    if (!(*v > 0)) throw ConfigError("experiment.duration_s: must be positive");
    b.duration = from_seconds(*v);
  }
  if (auto v = r.number("experiment", "warmup_fraction")) b.warmup_fraction = *v;
  if (auto v = r.number("experiment", "drain_s")) {
    if (*v < 0) throw ConfigError("experiment.drain_s: must not be negative");
    b.drain_limit = from_seconds(*v);
  }
  if (auto v = r.integer("experiment", "threads")) x.threads = *v;
  if (auto v = r.raw("experiment", "output")) x.output = *v;
  if (auto v = r.raw("experiment", "timeline_output")) x.timeline_output = *v;

  std::size_t servers = b.workers.size();
  if (auto v = r.integer("cluster", "servers")) servers = *v;
  if (auto v = r.numbers("cluster", "workers")) {
    std::vector<std::size_t> w;
    for (double d : *v) {
      if (!(d >= 1) || d != static_cast<double>(static_cast<std::size_t>(d))) {
        throw ConfigError("cluster.workers: worker counts must be positive integers");
      }
      w.push_back(static_cast<std::size_t>(d));
    }
    if (w.size() == 1) {
      b.workers.assign(servers, w.front());
    } else if (w.size() == servers) {
      b.workers = w;
    } else {
      throw ConfigError("cluster.workers: expected 1 or " + std::to_string(servers) +
                        " values, got " + std::to_string(w.size()));
    }
  } else {
    b.workers.resize(servers, b.workers.empty() ? 15 : b.workers.front());
  }
  if (auto v = r.boolean("cluster", "drop_counts_in_service")) b.drop_counts_in_service = *v;
  if (auto v = r.number("cluster", "drop_cost_us")) {
    if (*v < 0) throw ConfigError("cluster.drop_cost_us: must not be negative");
    b.server_drop_cost = from_us(*v);
  }

  if (auto v = r.raw("workload", "distribution")) {
    try {
      b.service = parse_distribution(*v);
    } catch (const ConfigError& e) {
      throw ConfigError(std::string("workload.distribution: ") + e.what());
    }
  }
  if (auto v = r.number("workload", "jitter_p")) b.service.jitter_p = *v;
  if (auto v = r.number("workload", "jitter_factor")) b.service.jitter_factor = *v;

  if (auto v = r.number("network", "link_delay_us")) b.link_delay = from_us(*v);

  if (auto v = r.integer("switch", "tables")) b.switch_geometry.table_count = *v;
  if (auto v = r.integer("switch", "slots")) b.switch_geometry.slots_per_table = *v;
  if (auto v = r.number("switch", "per_packet_delay_ns")) {
    b.switch_geometry.per_packet_delay = SimDuration{std::llround(*v)};
  }
  if (auto v = r.number("switch", "recirc_delay_ns")) {
    b.switch_geometry.recirc_delay = SimDuration{std::llround(*v)};
  }

  if (auto v = r.number("client", "per_packet_cost_us")) b.client_per_packet_cost = from_us(*v);
  if (auto v = r.integer("client", "dedupe_window")) {
    if (*v == 0) throw ConfigError("client.dedupe_window: must be positive");
    b.dedupe_window = *v;
  }

  if (auto v = r.number("coordinator", "per_message_delay_us")) b.coordinator_delay = from_us(*v);
  if (auto v = r.boolean("coordinator", "per_worker")) b.coordinator_per_worker = *v;

  auto down = r.number("failure", "down_s");
  auto up = r.number("failure", "up_s");
  if (down.has_value() != up.has_value()) {
    throw ConfigError("failure: down_s and up_s must be given together");
  }
  if (down) b.failure = FailureWindow{kTimeZero + from_seconds(*down), kTimeZero + from_seconds(*up)};
  if (auto v = r.number("failure", "timeline_bin_s")) {
    if (!(*v > 0)) throw ConfigError("failure.timeline_bin_s: must be positive");
    b.timeline_bin = from_seconds(*v);
  }

  if (auto v = r.number("saturation", "probe_s")) {
    if (!(*v > 0)) throw ConfigError("saturation.probe_s: must be positive");
    x.saturation.probe_duration = from_seconds(*v);
  }
  if (auto v = r.integer("saturation", "iterations")) x.saturation.iterations = static_cast<int>(*v);
  if (auto v = r.number("saturation", "stable_ratio")) x.saturation.stable_ratio = *v;

  return x;
}

inline ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  return parse_config(in);
}

}  // namespace netclone
