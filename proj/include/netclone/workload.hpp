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
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "netclone/error.hpp"
#include "netclone/time.hpp"

namespace netclone {

using Rng = std::mt19937_64;

struct Exponential {
  double mean_us = 25.0;
};

struct Bimodal {
  double p_short = 0.9;
  double short_us = 25.0;
  double long_us = 250.0;
};

// Read-only key-value mix: a GET costs get_us, a SCAN costs
// get_us * scan_factor. Keys follow a Zipf law over key_count objects.
struct KeyValue {
  double get_us = 2.0;
  double scan_factor = 100.0;
  double zipf_alpha = 0.99;
  std::uint64_t key_count = 1'000'000;
  double scan_fraction = 0.01;
};

struct ServiceDistribution {
  std::variant<Exponential, Bimodal, KeyValue> base = Exponential{};
  double jitter_p = 0.0;
  double jitter_factor = 15.0;

  // Throws ConfigError.
  void validate() const {
    auto fail = [](const std::string& what) {
      throw ConfigError("service distribution: " + what);
    };
    std::visit(
        [&](const auto& d) {
          using T = std::decay_t<decltype(d)>;
          if constexpr (std::is_same_v<T, Exponential>) {
            if (!(d.mean_us > 0)) fail("exponential mean must be > 0");
          } else if constexpr (std::is_same_v<T, Bimodal>) {
            if (!(d.p_short >= 0 && d.p_short <= 1)) fail("p_short must be in [0,1]");
            if (!(d.short_us > 0 && d.long_us > 0)) fail("bimodal costs must be > 0");
          } else {
            if (!(d.get_us > 0)) fail("kv get cost must be > 0");
            if (!(d.scan_factor >= 1)) fail("kv scan factor must be >= 1");
            if (!(d.zipf_alpha >= 0)) fail("zipf alpha must be >= 0");
            if (d.key_count < 1) fail("kv key count must be >= 1");
            if (!(d.scan_fraction >= 0 && d.scan_fraction <= 1)) {
              fail("kv scan fraction must be in [0,1]");
            }
          }
        },
        base);
    if (!(jitter_p >= 0 && jitter_p <= 1)) fail("jitter probability must be in [0,1]");
    if (!(jitter_factor >= 1)) fail("jitter factor must be >= 1");
  }

  double base_mean_us() const {
    return std::visit(
        [](const auto& d) -> double {
          using T = std::decay_t<decltype(d)>;
          if constexpr (std::is_same_v<T, Exponential>) {
            return d.mean_us;
          } else if constexpr (std::is_same_v<T, Bimodal>) {
            return d.p_short * d.short_us + (1 - d.p_short) * d.long_us;
          } else {
            return d.get_us * ((1 - d.scan_fraction) + d.scan_fraction * d.scan_factor);
          }
        },
        base);
  }

  // Analytic mean including jitter.
  double mean_us() const {
    return base_mean_us() * (1.0 + jitter_p * (jitter_factor - 1.0));
  }
};

template <class URNG>
double sample_service_us(const ServiceDistribution& d, URNG& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double cost = std::visit(
      [&](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Exponential>) {
          return std::exponential_distribution<double>(1.0 / v.mean_us)(rng);
        } else if constexpr (std::is_same_v<T, Bimodal>) {
          return unit(rng) < v.p_short ? v.short_us : v.long_us;
        } else {
          return unit(rng) < v.scan_fraction ? v.get_us * v.scan_factor : v.get_us;
        }
      },
      d.base);
  // The jitter branch always consumes a draw so that streams with different
  // jitter_p stay aligned.
  if (unit(rng) < d.jitter_p) cost *= d.jitter_factor;
  return cost;
}

// Rounded to nanoseconds, never below 1 ns.
template <class URNG>
SimDuration sample_service(const ServiceDistribution& d, URNG& rng) {
  return std::max(from_us(sample_service_us(d, rng)), SimDuration{1});
}

// Precomputed CDF over keys 1..key_count with P(k) proportional to k^-alpha.
class ZipfTable {
 public:
  ZipfTable(std::uint64_t key_count, double alpha) : alpha_(alpha) {
    if (key_count < 1) throw ConfigError("zipf: key_count must be >= 1");
    if (!(alpha >= 0)) throw ConfigError("zipf: alpha must be >= 0");
    cdf_.resize(key_count);
    double acc = 0;
    for (std::uint64_t k = 1; k <= key_count; ++k) {
      acc += std::pow(static_cast<double>(k), -alpha);
      cdf_[k - 1] = acc;
    }
    norm_ = acc;
    for (double& c : cdf_) c /= norm_;
    cdf_.back() = 1.0;
  }

  std::uint64_t key_count() const { return cdf_.size(); }
  double alpha() const { return alpha_; }
  // Generalized harmonic number sum_k k^-alpha.
  double normalizer() const { return norm_; }

  template <class URNG>
  std::uint64_t operator()(URNG& rng) const {
    const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    if (it == cdf_.end()) --it;
    return static_cast<std::uint64_t>(it - cdf_.begin()) + 1;
  }

 private:
  std::vector<double> cdf_;
  double norm_ = 1.0;
  double alpha_;
};

// One-shot draw. Builds the CDF each call; keep a ZipfTable for streams.
template <class URNG>
std::uint64_t zipf_key(std::uint64_t key_count, double alpha, URNG& rng) {
  return ZipfTable(key_count, alpha)(rng);
}

namespace presets {
inline ServiceDistribution exp25(double p = 0.01) { return {Exponential{25}, p, 15}; }
inline ServiceDistribution exp50(double p = 0.01) { return {Exponential{50}, p, 15}; }
inline ServiceDistribution exp500(double p = 0.01) { return {Exponential{500}, p, 15}; }
inline ServiceDistribution bimodal_90_25_250(double p = 0.01) {
  return {Bimodal{0.9, 25, 250}, p, 15};
}
}  // namespace presets

namespace detail {

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline double parse_double(std::string_view s, std::string_view what) {
  s = trim(s);
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ConfigError(std::string(what) + ": not a number: '" + std::string(s) + "'");
  }
  return v;
}

inline std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

}  // namespace detail

// Parses "exp:25", "bimodal:0.9:25:250",
// "kv:get=2:scan=100:zipf=0.99:keys=1000000:scanfrac=0.01", each optionally
// followed by ":jitter=P:FACTOR".
inline ServiceDistribution parse_distribution(std::string_view spec) {
  using detail::parse_double;
  auto tokens = detail::split(detail::trim(spec), ':');
  ServiceDistribution d;
  d.jitter_p = 0.0;

  // Peel off the jitter suffix.
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i].starts_with("jitter=")) {
      if (i + 2 != tokens.size()) {
        throw ConfigError("service: jitter suffix must be 'jitter=P:FACTOR' at the end");
      }
      d.jitter_p = parse_double(tokens[i].substr(7), "service.jitter probability");
      d.jitter_factor = parse_double(tokens[i + 1], "service.jitter factor");
      tokens.resize(i);
      break;
    }
  }
  if (tokens.empty()) throw ConfigError("service: empty distribution spec");

  const auto kind = detail::trim(tokens[0]);
  if (kind == "exp") {
    if (tokens.size() != 2) throw ConfigError("service: expected exp:MEAN_US");
    d.base = Exponential{parse_double(tokens[1], "service.exp mean")};
  } else if (kind == "bimodal") {
    if (tokens.size() != 4) {
      throw ConfigError("service: expected bimodal:P_SHORT:SHORT_US:LONG_US");
    }
    d.base = Bimodal{parse_double(tokens[1], "service.bimodal p_short"),
                     parse_double(tokens[2], "service.bimodal short"),
                     parse_double(tokens[3], "service.bimodal long")};
  } else if (kind == "kv") {
    KeyValue kv;
    for (std::size_t i = 1; i < tokens.size(); ++i) {
      const auto kvp = detail::split(tokens[i], '=');
      if (kvp.size() != 2) {
        throw ConfigError("service: kv option must be key=value: '" +
                          std::string(tokens[i]) + "'");
      }
      const auto key = detail::trim(kvp[0]);
      const double v = parse_double(kvp[1], "service.kv " + std::string(key));
      if (key == "get") kv.get_us = v;
      else if (key == "scan") kv.scan_factor = v;
      else if (key == "zipf") kv.zipf_alpha = v;
      else if (key == "keys") kv.key_count = static_cast<std::uint64_t>(v);
      else if (key == "scanfrac") kv.scan_fraction = v;
      else throw ConfigError("service: unknown kv option '" + std::string(key) + "'");
    }
    d.base = kv;
  } else {
    throw ConfigError("service: unknown distribution kind '" + std::string(kind) + "'");
  }
  d.validate();
  return d;
}

inline std::string to_string(const ServiceDistribution& d) {
  using detail::format_double;
  std::string out = std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Exponential>) {
          return "exp:" + format_double(v.mean_us);
        } else if constexpr (std::is_same_v<T, Bimodal>) {
          return "bimodal:" + format_double(v.p_short) + ":" +
                 format_double(v.short_us) + ":" + format_double(v.long_us);
        } else {
          return "kv:get=" + format_double(v.get_us) +
                 ":scan=" + format_double(v.scan_factor) +
                 ":zipf=" + format_double(v.zipf_alpha) +
                 ":keys=" + std::to_string(v.key_count) +
                 ":scanfrac=" + format_double(v.scan_fraction);
        }
      },
      d.base);
  if (d.jitter_p > 0) {
    out += ":jitter=" + format_double(d.jitter_p) + ":" + format_double(d.jitter_factor);
  }
  return out;
}

}  // namespace netclone
