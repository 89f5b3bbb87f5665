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
#include <array>
#include <charconv>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "netclone/engine.hpp"
#include "netclone/error.hpp"
#include "netclone/model.hpp"

namespace netclone {

// Column order of the results file. Fixed; downstream tools index by name.
inline constexpr std::array<std::string_view, 13> kCsvColumns = {
    "scheme",     "load",          "offered_rps",      "achieved_rps",
    "mean_us",    "p50_us",        "p99_us",           "clone_rate",
    "server_drop_rate", "filter_drops", "duplicate_deliveries", "seed",
    "duration_s",
};

inline constexpr std::array<std::string_view, 6> kTimelineColumns = {
    "scheme", "load", "seed", "second", "achieved_rps", "duplicates",
};

namespace csv {

inline std::string format_number(double v) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), end);
}

inline std::string format_number(std::uint64_t v) { return std::to_string(v); }

// RFC 4180: quote fields holding a comma, quote, CR or LF; double inner quotes.
inline std::string escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

inline void write_record(std::ostream& os, std::span<const std::string> fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) os << ',';
    os << escape(fields[i]);
  }
  os << "\r\n";
}

// Reads one record. Returns nullopt at end of input. Quoted fields may span
// lines. Accepts LF or CRLF terminators.
inline std::optional<std::vector<std::string>> read_record(std::istream& is) {
  if (is.peek() == std::char_traits<char>::eof()) return std::nullopt;
  std::vector<std::string> fields(1);
  bool quoted = false;
  bool after_quote = false;
  for (int ch = is.get(); ch != std::char_traits<char>::eof(); ch = is.get()) {
    const char c = static_cast<char>(ch);
    if (quoted) {
      if (c == '"') {
        if (is.peek() == '"') {
          fields.back() += '"';
          is.get();
        } else {
          quoted = false;
          after_quote = true;
        }
      } else {
        fields.back() += c;
      }
      continue;
    }
    if (c == ',') {
      fields.emplace_back();
      after_quote = false;
    } else if (c == '\n') {
      return fields;
    } else if (c == '\r') {
      if (is.peek() == '\n') is.get();
      return fields;
    } else if (c == '"' && fields.back().empty() && !after_quote) {
      quoted = true;
    } else {
      if (after_quote) throw SchemaError("csv: text after closing quote");
      fields.back() += c;
    }
  }
  if (quoted) throw SchemaError("csv: unterminated quoted field");
  return fields;
}

}  // namespace csv

inline std::vector<std::string> csv_fields(const MetricsRecord& m) {
  using csv::format_number;
  return {std::string(scheme_name(m.scheme)),
          format_number(m.load),
          format_number(m.offered_rps),
          format_number(m.achieved_rps),
          format_number(m.mean_us),
          format_number(m.p50_us),
          format_number(m.p99_us),
          format_number(m.clone_rate),
          format_number(m.server_drop_rate),
          format_number(m.filter_drops),
          format_number(m.duplicate_deliveries),
          format_number(m.seed),
          format_number(m.duration_s)};
}

inline void write_csv(std::ostream& os, std::span<const MetricsRecord> rows) {
  const std::vector<std::string> header(kCsvColumns.begin(), kCsvColumns.end());
  csv::write_record(os, header);
  for (const MetricsRecord& m : rows) csv::write_record(os, csv_fields(m));
}

// One row per (run, timeline bin).
inline void write_timeline_csv(std::ostream& os, std::span<const MetricsRecord> rows) {
  using csv::format_number;
  const std::vector<std::string> header(kTimelineColumns.begin(), kTimelineColumns.end());
  csv::write_record(os, header);
  for (const MetricsRecord& m : rows) {
    for (std::size_t b = 0; b < m.timeline_rps.size(); ++b) {
      const std::vector<std::string> f = {
          std::string(scheme_name(m.scheme)), format_number(m.load), format_number(m.seed),
          format_number(static_cast<double>(b) * m.timeline_bin_s),
          format_number(m.timeline_rps[b]),
          format_number(b < m.timeline_duplicates.size() ? m.timeline_duplicates[b] : 0)};
      csv::write_record(os, f);
    }
  }
}

namespace csv {

template <class T>
T parse_field(const std::string& s, std::string_view column, std::size_t line) {
  T v{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw SchemaError("csv line " + std::to_string(line) + ": bad value '" + s +
                      "' in column " + std::string(column));
  }
  return v;
}

}  // namespace csv

// Reads a results file. Columns may appear in any order but the set must be
// exactly kCsvColumns; extra columns are rejected.
inline std::vector<MetricsRecord> read_csv(std::istream& is) {
  auto header = csv::read_record(is);
  if (!header) throw SchemaError("csv: missing header row");
  std::map<std::string, std::size_t, std::less<>> pos;
  for (std::size_t i = 0; i < header->size(); ++i) {
    const std::string& name = (*header)[i];
    if (std::find(kCsvColumns.begin(), kCsvColumns.end(), name) == kCsvColumns.end()) {
      throw SchemaError("csv: unknown column '" + name + "'");
    }
    if (!pos.emplace(name, i).second) throw SchemaError("csv: duplicate column '" + name + "'");
  }
  for (std::string_view c : kCsvColumns) {
    if (!pos.contains(c)) throw SchemaError("csv: missing column '" + std::string(c) + "'");
  }

  std::vector<MetricsRecord> out;
  std::size_t line = 1;
  while (auto rec = csv::read_record(is)) {
    ++line;
    if (rec->size() == 1 && rec->front().empty()) continue;
    if (rec->size() != header->size()) {
      throw SchemaError("csv line " + std::to_string(line) + ": expected " +
                        std::to_string(header->size()) + " fields, got " +
                        std::to_string(rec->size()));
    }
    auto get = [&](std::string_view c) -> const std::string& { return (*rec)[pos.find(c)->second]; };
    auto num = [&](std::string_view c) { return csv::parse_field<double>(get(c), c, line); };
    auto count = [&](std::string_view c) { return csv::parse_field<std::uint64_t>(get(c), c, line); };

    MetricsRecord m;
    const auto scheme = parse_scheme(get("scheme"));
    if (!scheme) {
      throw SchemaError("csv line " + std::to_string(line) + ": unknown scheme '" + get("scheme") + "'");
    }
    m.scheme = *scheme;
    m.load = num("load");
    m.offered_rps = num("offered_rps");
    m.achieved_rps = num("achieved_rps");
    m.mean_us = num("mean_us");
    m.p50_us = num("p50_us");
    m.p99_us = num("p99_us");
    m.clone_rate = num("clone_rate");
    m.server_drop_rate = num("server_drop_rate");
    m.filter_drops = count("filter_drops");
    m.duplicate_deliveries = count("duplicate_deliveries");
    m.seed = count("seed");
    m.duration_s = num("duration_s");
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace netclone
