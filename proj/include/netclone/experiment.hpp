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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "netclone/config.hpp"
#include "netclone/engine.hpp"
#include "netclone/model.hpp"

namespace netclone {

using ProgressFn = std::function<void(const std::string&)>;

// Baseline saturation for the experiment's cluster, the unit of fractional
// loads.
inline double reference_rps(const ExperimentConfig& x, const ProgressFn& log = {}) {
  if (x.reference_rps) return *x.reference_rps;
  RunConfig probe = x.base;
  probe.scheme = SchemeId::Baseline;
  probe.seed = x.seeds.front();
  const SaturationResult sat = find_saturation(probe, x.saturation);
  if (log) {
    log("baseline saturation " + std::to_string(static_cast<long long>(sat.offered_rps)) +
        " rps after " + std::to_string(sat.probes) + " probes");
  }
  return sat.offered_rps;
}

// Expands the sweep into runs ordered by (scheme as listed, load, seed).
inline std::vector<RunConfig> plan_runs(const ExperimentConfig& x, double reference) {
  std::vector<double> loads = x.loads;
  std::sort(loads.begin(), loads.end());
  std::vector<RunConfig> runs;
  for (SchemeId s : x.schemes) {
    for (double load : loads) {
      for (std::uint64_t seed : x.seeds) {
        RunConfig c = x.base;
        c.scheme = s;
        c.load = load;
        c.offered_rps = x.loads_are_fractions ? load * reference : load;
        c.seed = seed;
        runs.push_back(std::move(c));
      }
    }
  }
  return runs;
}

inline std::vector<MetricsRecord> run_experiment(const ExperimentConfig& x,
                                                 const ProgressFn& log = {}) {
  x.validate();
  const double ref = x.loads_are_fractions ? reference_rps(x, log) : 1.0;
  const std::vector<RunConfig> runs = plan_runs(x, ref);
  if (log) log("running " + std::to_string(runs.size()) + " simulations");
  return run_sweep(runs, x.threads);
}

// ---------------------------------------------------------------------------
// Summary
// ---------------------------------------------------------------------------

struct SchemeSummary {
  SchemeId scheme = SchemeId::Baseline;
  // Highest achieved throughput over the stable rows (achieved >= 98% of
  // offered); falls back to the highest achieved overall.
  double saturation_rps = 0;
  // Mean p99 across seeds, keyed by load.
  std::map<double, double> p99_by_load;
  // Mean over common loads of baseline_p99 / scheme_p99. Unset without
  // baseline rows.
  std::optional<double> improvement;
};

inline std::vector<SchemeSummary> summarize(const std::vector<MetricsRecord>& rows) {
  std::map<SchemeId, std::map<double, std::vector<double>>> p99;
  std::map<SchemeId, double> sat_stable;
  std::map<SchemeId, double> sat_any;
  std::vector<SchemeId> order;
  for (const MetricsRecord& m : rows) {
    if (std::find(order.begin(), order.end(), m.scheme) == order.end()) order.push_back(m.scheme);
    p99[m.scheme][m.load].push_back(m.p99_us);
    sat_any[m.scheme] = std::max(sat_any[m.scheme], m.achieved_rps);
    if (m.offered_rps > 0 && m.achieved_rps >= 0.98 * m.offered_rps) {
      sat_stable[m.scheme] = std::max(sat_stable[m.scheme], m.achieved_rps);
    }
  }
  std::sort(order.begin(), order.end());

  std::vector<SchemeSummary> out;
  for (SchemeId s : order) {
    SchemeSummary sum;
    sum.scheme = s;
    sum.saturation_rps = sat_stable.contains(s) ? sat_stable[s] : sat_any[s];
    for (const auto& [load, v] : p99[s]) sum.p99_by_load[load] = mean(v);
    out.push_back(std::move(sum));
  }

  const auto base = std::find_if(out.begin(), out.end(),
                                 [](const SchemeSummary& s) { return s.scheme == SchemeId::Baseline; });
  if (base != out.end()) {
    for (SchemeSummary& s : out) {
      double acc = 0;
      int n = 0;
      for (const auto& [load, p] : s.p99_by_load) {
        auto it = base->p99_by_load.find(load);
        if (it == base->p99_by_load.end() || !(p > 0)) continue;
        acc += it->second / p;
        ++n;
      }
      if (n > 0) s.improvement = acc / n;
    }
  }
  return out;
}

inline std::string format_summary(const std::vector<SchemeSummary>& summary) {
  std::ostringstream os;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-20s %14s %12s\n", "scheme", "saturation_rps", "improvement");
  os << buf;
  for (const SchemeSummary& s : summary) {
    const std::string imp = s.improvement ? std::to_string(*s.improvement).substr(0, 6) : "-";
    std::snprintf(buf, sizeof buf, "%-20s %14.0f %12s\n", std::string(scheme_name(s.scheme)).c_str(),
                  s.saturation_rps, imp.c_str());
    os << buf;
  }
  os << "\np99_us by load\n";
  std::snprintf(buf, sizeof buf, "%-20s", "load");
  os << buf;
  for (const SchemeSummary& s : summary) {
    std::snprintf(buf, sizeof buf, " %18s", std::string(scheme_name(s.scheme)).c_str());
    os << buf;
  }
  os << '\n';
  std::vector<double> loads;
  for (const SchemeSummary& s : summary) {
    for (const auto& [l, p] : s.p99_by_load) loads.push_back(l);
  }
  std::sort(loads.begin(), loads.end());
  loads.erase(std::unique(loads.begin(), loads.end()), loads.end());
  for (double l : loads) {
    std::snprintf(buf, sizeof buf, "%-20g", l);
    os << buf;
    for (const SchemeSummary& s : summary) {
      auto it = s.p99_by_load.find(l);
      if (it == s.p99_by_load.end()) {
        std::snprintf(buf, sizeof buf, " %18s", "-");
      } else {
        std::snprintf(buf, sizeof buf, " %18.1f", it->second);
      }
      os << buf;
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace netclone
