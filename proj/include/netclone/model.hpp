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
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "netclone/error.hpp"
#include "netclone/time.hpp"

namespace netclone {

using ServerId = std::uint16_t;    // encoded as one byte on the wire
using GroupId = std::uint16_t;
using TableIndex = std::uint8_t;
using EndpointId = std::uint16_t;  // stands in for an IP address

enum class MsgType : std::uint8_t { Request = 0x01, Response = 0x02 };

enum class CloneMark : std::uint8_t {
  NotCloned = 0,
  ClonedOriginal = 1,
  Clone = 2,
};

inline constexpr std::uint8_t kMaxState = 0xFF;

// One NetClone message. The first seven members are the wire header; the
// rest is simulation bookkeeping that never leaves the process.
struct NetClonePacket {
  MsgType type = MsgType::Request;
  std::uint32_t req_id = 0;
  GroupId grp = 0;
  ServerId sid = 0;
  std::uint8_t state = 0;
  CloneMark clo = CloneMark::NotCloned;
  TableIndex idx = 0;

  EndpointId src = 0;
  EndpointId dst = 0;
  SimTime created_at{};
  SimTime enqueued_at{};
  // Request token owned by the client's RPC layer. Survives switch resets,
  // unlike req_id.
  std::uint64_t client_seq = 0;
  // Set while a clone is looping back through the recirculation port.
  bool recirculating = false;

  bool is_request() const { return type == MsgType::Request; }
  bool is_response() const { return type == MsgType::Response; }
  bool cloned() const { return clo != CloneMark::NotCloned; }

  friend bool operator==(const NetClonePacket&, const NetClonePacket&) = default;
};

// Compares only the fields carried in the wire header.
inline bool same_header(const NetClonePacket& a, const NetClonePacket& b) {
  return a.type == b.type && a.req_id == b.req_id && a.grp == b.grp &&
         a.sid == b.sid && a.state == b.state && a.clo == b.clo &&
         a.idx == b.idx;
}

enum class SchemeId : std::uint8_t {
  Baseline,
  CClone,
  Laedge,
  NetClone,
  NetCloneRackSched,
  NetCloneNoFilter,
};

inline constexpr std::array<SchemeId, 6> kAllSchemes = {
    SchemeId::Baseline, SchemeId::CClone,          SchemeId::Laedge,
    SchemeId::NetClone, SchemeId::NetCloneRackSched, SchemeId::NetCloneNoFilter};

inline std::string_view scheme_name(SchemeId s) {
  switch (s) {
    case SchemeId::Baseline: return "baseline";
    case SchemeId::CClone: return "cclone";
    case SchemeId::Laedge: return "laedge";
    case SchemeId::NetClone: return "netclone";
    case SchemeId::NetCloneRackSched: return "netclone_racksched";
    case SchemeId::NetCloneNoFilter: return "netclone_nofilter";
  }
  return "unknown";
}

inline std::optional<SchemeId> parse_scheme(std::string_view name) {
  for (SchemeId s : kAllSchemes) {
    if (scheme_name(s) == name) return s;
  }
  return std::nullopt;
}

// True for the schemes whose requests go through the in-switch cloning logic.
inline bool uses_switch_cloning(SchemeId s) {
  return s == SchemeId::NetClone || s == SchemeId::NetCloneRackSched ||
         s == SchemeId::NetCloneNoFilter;
}

// ---------------------------------------------------------------------------
// Wire codec
//
//   offset  size  field
//        0     1  TYPE    (0x01 REQ, 0x02 RESP)
//        1     4  REQ_ID  big-endian
//        5     2  GRP     big-endian
//        7     1  SID
//        8     1  STATE
//        9     1  CLO     (0, 1, 2)
//       10     1  IDX
//       11     1  padding, always zero
// ---------------------------------------------------------------------------

inline constexpr std::size_t kHeaderSize = 12;

using HeaderBytes = std::array<std::byte, kHeaderSize>;

inline HeaderBytes encode_header(const NetClonePacket& pkt) {
  HeaderBytes out{};
  auto put = [&out](std::size_t at, std::uint32_t v, std::size_t width) {
    for (std::size_t i = 0; i < width; ++i) {
      out[at + i] =
          static_cast<std::byte>((v >> (8 * (width - 1 - i))) & 0xFFu);
    }
  };
  put(0, static_cast<std::uint8_t>(pkt.type), 1);
  put(1, pkt.req_id, 4);
  put(5, pkt.grp, 2);
  put(7, std::min<std::uint32_t>(pkt.sid, 0xFF), 1);
  put(8, pkt.state, 1);
  put(9, static_cast<std::uint8_t>(pkt.clo), 1);
  put(10, pkt.idx, 1);
  return out;
}

inline NetClonePacket decode_header(std::span<const std::byte> bytes) {
  if (bytes.size() < kHeaderSize) {
    throw TruncatedHeader("header needs " + std::to_string(kHeaderSize) +
                          " bytes, got " + std::to_string(bytes.size()));
  }
  auto get = [&bytes](std::size_t at, std::size_t width) {
    std::uint32_t v = 0;
    for (std::size_t i = 0; i < width; ++i) {
      v = (v << 8) | std::to_integer<std::uint32_t>(bytes[at + i]);
    }
    return v;
  };

  NetClonePacket pkt;
  const auto type = get(0, 1);
  if (type != static_cast<std::uint8_t>(MsgType::Request) &&
      type != static_cast<std::uint8_t>(MsgType::Response)) {
    throw InvalidType("unknown TYPE value " + std::to_string(type));
  }
  pkt.type = static_cast<MsgType>(type);
  pkt.req_id = get(1, 4);
  pkt.grp = static_cast<GroupId>(get(5, 2));
  pkt.sid = static_cast<ServerId>(get(7, 1));
  pkt.state = static_cast<std::uint8_t>(get(8, 1));
  const auto clo = get(9, 1);
  if (clo > static_cast<std::uint8_t>(CloneMark::Clone)) {
    throw InvalidField("unknown CLO value " + std::to_string(clo));
  }
  pkt.clo = static_cast<CloneMark>(clo);
  pkt.idx = static_cast<TableIndex>(get(10, 1));
  return pkt;
}

}  // namespace netclone
