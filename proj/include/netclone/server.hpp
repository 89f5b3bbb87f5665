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
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "netclone/model.hpp"
#include "netclone/time.hpp"

namespace netclone {

struct ServerConfig {
  ServerId id = 0;
  EndpointId endpoint = 0;
  std::size_t workers = 15;
  // When set, a clone is also refused while any worker is busy, not only
  // while requests are waiting.
  bool drop_counts_in_service = false;
  // Dispatcher time burnt on receiving and discarding a clone.
  SimDuration drop_cost = std::chrono::nanoseconds(300);
};

enum class ArrivalResult { Enqueued, DroppedClone };

struct ServiceStart {
  std::size_t worker;
  NetClonePacket request;
  SimTime completes_at;
};

struct ArrivalOutcome {
  ArrivalResult result;
  std::optional<ServiceStart> started;
};

struct CompletionOutcome {
  NetClonePacket response;
  std::optional<ServiceStart> next;
};

// A worker server: one dispatcher feeding a global FCFS queue drained by k
// worker threads.
class ServerModel {
 public:
  using ServiceTimeFn = std::function<SimDuration()>;

  ServerModel(ServerConfig cfg, ServiceTimeFn service_time)
      : cfg_(cfg), service_time_(std::move(service_time)), workers_(cfg.workers) {
    if (cfg.workers == 0) throw std::invalid_argument("server needs at least one worker");
  }

  const ServerConfig& config() const { return cfg_; }
  ServerId id() const { return cfg_.id; }

  // Waiting requests only; requests in service are not counted.
  std::size_t queue_length() const { return queue_.size(); }
  std::size_t busy_workers() const { return busy_; }
  std::size_t worker_count() const { return workers_.size(); }
  std::uint64_t drops() const { return drops_; }
  std::uint64_t started() const { return started_; }

  // The dispatcher is serial: a discarded clone keeps it busy for drop_cost.
  bool dispatcher_ready(SimTime now) const { return now >= dispatcher_free_at_; }
  SimTime dispatcher_free_at() const { return dispatcher_free_at_; }

  ArrivalOutcome on_request_arrival(NetClonePacket pkt, SimTime now) {
    if (!pkt.is_request()) {
      throw std::invalid_argument("server received a response");
    }
    const bool occupied =
        !queue_.empty() || (cfg_.drop_counts_in_service && busy_ > 0);
    if (pkt.clo == CloneMark::Clone && occupied) {
      ++drops_;
      dispatcher_free_at_ = now + cfg_.drop_cost;
      return {ArrivalResult::DroppedClone, std::nullopt};
    }

    pkt.enqueued_at = now;
    if (busy_ < workers_.size()) {
      return {ArrivalResult::Enqueued, start(std::move(pkt), now)};
    }
    queue_.push_back(std::move(pkt));
    return {ArrivalResult::Enqueued, std::nullopt};
  }

  // Frees `worker`, builds the response and pulls the next queued request.
  // The piggybacked state is the number of waiting requests when the
  // response leaves, before the freed worker takes the next one.
  CompletionOutcome on_service_complete(std::size_t worker, SimTime now) {
    auto& slot = workers_.at(worker);
    if (!slot) throw std::logic_error("completion on an idle worker");
    NetClonePacket req = std::move(*slot);
    slot.reset();
    --busy_;

    NetClonePacket resp = req;
    resp.type = MsgType::Response;
    resp.sid = cfg_.id;
    resp.state = static_cast<std::uint8_t>(
        std::min<std::size_t>(queue_.size(), kMaxState));
    resp.src = cfg_.endpoint;
    resp.dst = req.src;
    resp.recirculating = false;

    CompletionOutcome out{resp, std::nullopt};
    if (!queue_.empty()) {
      NetClonePacket next = std::move(queue_.front());
      queue_.pop_front();
      out.next = start(std::move(next), now);
    }
    return out;
  }

 private:
  ServiceStart start(NetClonePacket pkt, SimTime now) {
    auto it = std::find_if(workers_.begin(), workers_.end(),
                           [](const auto& w) { return !w.has_value(); });
    const auto worker = static_cast<std::size_t>(it - workers_.begin());
    ++busy_;
    ++started_;
    const SimTime done = now + service_time_();
    *it = pkt;
    return {worker, std::move(pkt), done};
  }

  ServerConfig cfg_;
  ServiceTimeFn service_time_;
  std::vector<std::optional<NetClonePacket>> workers_;
  std::deque<NetClonePacket> queue_;
  std::size_t busy_ = 0;
  std::uint64_t drops_ = 0;
  std::uint64_t started_ = 0;
  SimTime dispatcher_free_at_{};
};

}  // namespace netclone
