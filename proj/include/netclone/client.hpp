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
#include <bit>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "netclone/error.hpp"
#include "netclone/model.hpp"
#include "netclone/time.hpp"
#include "netclone/workload.hpp"

namespace netclone {

struct ClientConfig {
  double rate_rps = 1e5;
  std::size_t group_count = 1;
  std::size_t table_count = 1;
  EndpointId endpoint = 0;
  // Receiver-thread time spent on every response, duplicate or not.
  SimDuration per_packet_cost = std::chrono::nanoseconds(300);
  std::size_t dedupe_window = std::size_t{1} << 20;
  std::uint64_t seed = 1;
  // Requests created earlier are deduplicated but not sampled (warmup).
  SimTime record_from{};
};

enum class ResponseResult { Recorded, DuplicateIgnored };

struct ResponseOutcome {
  ResponseResult result;
  // When the receiver thread picked the response up.
  SimTime handled_at;
  SimDuration latency{};
};

// Open-loop request source plus the receiver thread that consumes responses.
//
// Arrival gaps and header choices come from separate streams, so the arrival
// process is the same for every scheme under a given seed.
class ClientModel {
 public:
  explicit ClientModel(ClientConfig cfg)
      : cfg_(cfg),
        arrival_rng_(cfg.seed),
        choice_rng_(cfg.seed ^ 0x9E3779B97F4A7C15ull),
        window_(std::bit_ceil(std::max<std::size_t>(cfg.dedupe_window, 1)), 0) {
    if (!(cfg.rate_rps > 0)) throw NonPositiveRate("client rate must be positive");
    if (cfg.group_count == 0 || cfg.table_count == 0) {
      throw std::invalid_argument("client needs at least one group and one table");
    }
  }

  const ClientConfig& config() const { return cfg_; }

  SimDuration next_arrival_gap() {
    std::exponential_distribution<double> gap(cfg_.rate_rps);
    return std::max(from_seconds(gap(arrival_rng_)), SimDuration{1});
  }

  NetClonePacket build_request(SimTime now) {
    NetClonePacket pkt;
    pkt.type = MsgType::Request;
    pkt.clo = CloneMark::NotCloned;
    pkt.req_id = 0;
    pkt.grp = static_cast<GroupId>(
        std::uniform_int_distribution<std::size_t>(0, cfg_.group_count - 1)(choice_rng_));
    pkt.idx = static_cast<TableIndex>(
        std::uniform_int_distribution<std::size_t>(0, cfg_.table_count - 1)(choice_rng_));
    pkt.src = cfg_.endpoint;
    pkt.created_at = now;
    pkt.client_seq = ++issued_;
    return pkt;
  }

  // Stream for scheme-specific client decisions (random server picks).
  Rng& choice_rng() { return choice_rng_; }

  ResponseOutcome on_response(const NetClonePacket& pkt, SimTime now) {
    if (!pkt.is_response()) throw std::invalid_argument("client received a request");
    const SimTime handled = std::max(now, receiver_free_at_);
    receiver_free_at_ = handled + cfg_.per_packet_cost;
    busy_time_ += cfg_.per_packet_cost;
    ++responses_;

    if (seen(pkt.client_seq)) {
      ++duplicates_;
      return {ResponseResult::DuplicateIgnored, handled};
    }
    mark(pkt.client_seq);
    const SimDuration latency = handled - pkt.created_at;
    if (pkt.created_at >= cfg_.record_from) latencies_.push_back(latency);
    return {ResponseResult::Recorded, handled, latency};
  }

  std::uint64_t issued() const { return issued_; }
  std::uint64_t responses() const { return responses_; }
  std::uint64_t duplicates() const { return duplicates_; }
  SimDuration busy_time() const { return busy_time_; }
  const std::vector<SimDuration>& latencies() const { return latencies_; }

 private:
  // Ring of the most recent request tokens; slot holds token+1 once seen.
  bool seen(std::uint64_t token) const {
    if (token + window_.size() <= issued_) return true;  // fell out of window
    return window_[token & (window_.size() - 1)] == token + 1;
  }
  void mark(std::uint64_t token) { window_[token & (window_.size() - 1)] = token + 1; }

  ClientConfig cfg_;
  Rng arrival_rng_;
  Rng choice_rng_;
  std::vector<std::uint64_t> window_;
  std::uint64_t issued_ = 0;
  std::uint64_t responses_ = 0;
  std::uint64_t duplicates_ = 0;
  SimDuration busy_time_{};
  SimTime receiver_free_at_{};
  std::vector<SimDuration> latencies_;
};

}  // namespace netclone
