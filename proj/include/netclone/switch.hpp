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
#include <bit>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <boost/crc.hpp>

#include "netclone/error.hpp"
#include "netclone/model.hpp"
#include "netclone/time.hpp"

namespace netclone {

// Candidate server pair for one group id.
struct GroupEntry {
  ServerId first;
  ServerId second;
  friend bool operator==(const GroupEntry&, const GroupEntry&) = default;
};

// Every ordered pair (i, j), i != j, once. Group id is the vector index.
// Both orders are present so that non-cloned traffic, which always goes to
// the first candidate, still spreads uniformly.
inline std::vector<GroupEntry> build_group_table(std::size_t n) {
  if (n < 2) {
    throw InsufficientServers("group table needs at least 2 servers, got " +
                              std::to_string(n));
  }
  std::vector<GroupEntry> groups;
  groups.reserve(n * (n - 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) {
        groups.push_back({static_cast<ServerId>(i), static_cast<ServerId>(j)});
      }
    }
  }
  return groups;
}

// CRC-32 (IEEE) of the big-endian request id, masked to the table size.
inline std::size_t hash_slot(std::uint32_t req_id, std::size_t slots) {
  if (slots == 0 || !std::has_single_bit(slots)) {
    throw std::invalid_argument("filter table size must be a power of two");
  }
  const std::array<unsigned char, 4> bytes = {
      static_cast<unsigned char>(req_id >> 24),
      static_cast<unsigned char>(req_id >> 16),
      static_cast<unsigned char>(req_id >> 8),
      static_cast<unsigned char>(req_id)};
  boost::crc_32_type crc;
  crc.process_bytes(bytes.data(), bytes.size());
  return static_cast<std::size_t>(crc.checksum()) & (slots - 1);
}

// Request rate that `total_slots` filter slots can serve when each slot is
// held for the average request latency.
template <class Rep, class Period>
double capacity_estimate(std::uint64_t total_slots,
                         std::chrono::duration<Rep, Period> avg_latency) {
  const double seconds = std::chrono::duration<double>(avg_latency).count();
  if (!(seconds > 0.0)) {
    throw NonPositiveLatency("average latency must be positive");
  }
  return static_cast<double>(total_slots) / seconds;
}

enum class SwitchMode : std::uint8_t { NetClone, RackSched, FilterOff };

struct SwitchGeometry {
  std::size_t table_count = 2;
  std::size_t slots_per_table = std::size_t{1} << 17;
  SimDuration per_packet_delay = std::chrono::nanoseconds(500);
  SimDuration recirc_delay = std::chrono::nanoseconds(800);
};

// Entire soft and control-plane state of the ToR switch.
struct SwitchState {
  SwitchMode mode = SwitchMode::NetClone;
  SwitchGeometry geometry;

  std::uint32_t seq = 0;
  std::vector<GroupEntry> grp_table;
  std::vector<EndpointId> addr_table;
  std::vector<std::uint8_t> state_table;
  std::vector<std::uint8_t> shadow_table;
  // table_count * slots_per_table request ids, table-major. 0 = empty.
  std::vector<std::uint32_t> filter;

  SwitchState() = default;

  SwitchState(SwitchMode m, SwitchGeometry g, std::vector<EndpointId> addresses)
      : mode(m),
        geometry(g),
        grp_table(build_group_table(addresses.size())),
        addr_table(std::move(addresses)),
        state_table(addr_table.size(), 0),
        shadow_table(addr_table.size(), 0),
        filter(g.table_count * g.slots_per_table, 0) {
    if (g.table_count == 0 || g.table_count > 256) {
      throw std::invalid_argument("filter table count must be in 1..256");
    }
    if (g.slots_per_table == 0 || !std::has_single_bit(g.slots_per_table)) {
      throw std::invalid_argument("filter table size must be a power of two");
    }
    if (addr_table.size() > 256) {
      throw std::invalid_argument("at most 256 servers fit the SID field");
    }
  }

  std::size_t server_count() const { return addr_table.size(); }
  std::size_t group_count() const { return grp_table.size(); }

  std::uint32_t& filter_slot(std::size_t table, std::size_t slot) {
    return filter.at(table * geometry.slots_per_table + slot);
  }
  std::uint32_t filter_slot(std::size_t table, std::size_t slot) const {
    return filter.at(table * geometry.slots_per_table + slot);
  }
};

// Outcomes of one pipeline pass.
struct ForwardTo {
  EndpointId port;
  NetClonePacket pkt;
};

// Original goes out on `port`; `clone` loops back for a second pass.
struct ForwardAndRecirculate {
  EndpointId port;
  NetClonePacket pkt;
  NetClonePacket clone;
};

struct DropPacket {};

struct ForwardToClient {
  EndpointId port;
  NetClonePacket pkt;
};

using SwitchAction =
    std::variant<ForwardTo, ForwardAndRecirculate, DropPacket, ForwardToClient>;

inline SwitchAction process_request(SwitchState& st, NetClonePacket pkt) {
  if (!pkt.is_request()) {
    throw std::invalid_argument("process_request called with a response");
  }

  // Second pass of a clone: address it to the server recorded in SID.
  if (pkt.cloned()) {
    pkt.clo = CloneMark::Clone;
    pkt.recirculating = false;
    pkt.dst = st.addr_table.at(pkt.sid);
    return ForwardTo{pkt.dst, pkt};
  }

  if (pkt.grp >= st.grp_table.size()) {
    throw UnknownGroup("group " + std::to_string(pkt.grp) + " not installed (" +
                       std::to_string(st.grp_table.size()) + " groups)");
  }

  ++st.seq;
  if (st.seq == 0) ++st.seq;  // 0 marks an empty filter slot
  pkt.req_id = st.seq;

  const GroupEntry cand = st.grp_table[pkt.grp];
  pkt.dst = st.addr_table[cand.first];

  // StateT is read for the first candidate, ShadowT for the second.
  const std::uint8_t load1 = st.state_table[cand.first];
  const std::uint8_t load2 = st.shadow_table[cand.second];

  if (load1 == 0 && load2 == 0) {
    pkt.clo = CloneMark::ClonedOriginal;
    pkt.sid = cand.second;
    NetClonePacket clone = pkt;
    clone.recirculating = true;
    return ForwardAndRecirculate{pkt.dst, pkt, clone};
  }

  if (st.mode == SwitchMode::RackSched && load2 < load1) {
    pkt.dst = st.addr_table[cand.second];
  }
  return ForwardTo{pkt.dst, pkt};
}

inline SwitchAction process_response(SwitchState& st, NetClonePacket pkt) {
  if (!pkt.is_response()) {
    throw std::invalid_argument("process_response called with a request");
  }

  st.state_table.at(pkt.sid) = pkt.state;
  st.shadow_table.at(pkt.sid) = pkt.state;

  if (pkt.cloned() && st.mode != SwitchMode::FilterOff) {
    if (pkt.idx >= st.geometry.table_count) {
      throw std::out_of_range("filter table index " + std::to_string(pkt.idx) +
                              " out of range");
    }
    std::uint32_t& slot =
        st.filter_slot(pkt.idx, hash_slot(pkt.req_id, st.geometry.slots_per_table));
    if (slot == pkt.req_id) {
      slot = 0;
      return DropPacket{};
    }
    slot = pkt.req_id;
  }
  return ForwardToClient{pkt.dst, pkt};
}

// Clears everything the data plane learns at run time. Group and address
// tables are installed by the control plane and survive.
inline void reset_soft_state(SwitchState& st) {
  st.seq = 0;
  std::fill(st.state_table.begin(), st.state_table.end(), 0);
  std::fill(st.shadow_table.begin(), st.shadow_table.end(), 0);
  std::fill(st.filter.begin(), st.filter.end(), 0);
}

}  // namespace netclone
