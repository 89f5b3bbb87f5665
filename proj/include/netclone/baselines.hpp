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
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "netclone/error.hpp"
#include "netclone/model.hpp"
#include "netclone/time.hpp"

namespace netclone {

// Random dispatch without cloning.
template <class URNG>
ServerId baseline_route(std::size_t n, URNG& rng) {
  if (n < 1) throw InsufficientServers("baseline routing needs a server");
  return static_cast<ServerId>(std::uniform_int_distribution<std::size_t>(0, n - 1)(rng));
}

// Two distinct servers, uniform over ordered pairs.
template <class URNG>
std::pair<ServerId, ServerId> cclone_route(std::size_t n, URNG& rng) {
  if (n < 2) {
    throw InsufficientServers("client cloning needs at least 2 servers, got " +
                              std::to_string(n));
  }
  const auto a = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
  auto b = std::uniform_int_distribution<std::size_t>(0, n - 2)(rng);
  if (b >= a) ++b;
  return {static_cast<ServerId>(a), static_cast<ServerId>(b)};
}

// Client-side request ids for client cloning live above this offset so they
// never collide with switch-assigned sequence numbers.
inline constexpr std::uint32_t kClientIdOffset = 0x8000'0000u;

struct CoordinatorDispatch {
  ServerId server;
  NetClonePacket pkt;
};

struct CoordinatorAction {
  // When the coordinator CPU finishes the message and emits its output.
  SimTime ready_at;
  std::vector<CoordinatorDispatch> dispatches;
  std::optional<NetClonePacket> to_client;
  bool buffered = false;
};

// Centralized cloning coordinator. It clones only onto servers known to be
// idle. Each server offers `slots` execution slots (1 = one request at a
// time); a slot is idle from the moment its response is handled until the
// coordinator dispatches to it again. Every message costs per_message_delay
// of CPU time and messages are handled one at a time.
class CoordinatorState {
 public:
  CoordinatorState(std::size_t servers, SimDuration per_message_delay, EndpointId endpoint,
                   std::size_t slots = 1)
      : delay_(per_message_delay), endpoint_(endpoint), outstanding_(servers, 0) {
    if (servers < 1) throw InsufficientServers("coordinator needs a server");
    if (slots < 1) throw std::invalid_argument("coordinator needs at least one slot per server");
    for (std::size_t k = 0; k < slots; ++k) {
      for (std::size_t s = 0; s < servers; ++s) idle_.push_back(static_cast<ServerId>(s));
    }
  }

  // Per-server slot counts, for heterogeneous servers.
  CoordinatorState(const std::vector<std::size_t>& slots, SimDuration per_message_delay,
                   EndpointId endpoint)
      : delay_(per_message_delay), endpoint_(endpoint), outstanding_(slots.size(), 0) {
    if (slots.empty()) throw InsufficientServers("coordinator needs a server");
    const std::size_t most = *std::max_element(slots.begin(), slots.end());
    for (std::size_t k = 0; k < most; ++k) {
      for (std::size_t s = 0; s < slots.size(); ++s) {
        if (k < slots[s]) idle_.push_back(static_cast<ServerId>(s));
      }
    }
  }

  CoordinatorAction on_request(NetClonePacket pkt, SimTime now) {
    if (!pkt.is_request()) throw std::invalid_argument("coordinator: expected a request");
    CoordinatorAction act{serialize(now), {}, std::nullopt, false};
    ++requests_;
    pkt.req_id = ++seq_;
    if (pkt.req_id == 0) pkt.req_id = ++seq_;
    inflight_[pkt.req_id] = Inflight{pkt.src, 0, false};
    if (idle_.empty()) {
      pending_.push_back(std::move(pkt));
      act.buffered = true;
    } else {
      dispatch(std::move(pkt), act);
    }
    return act;
  }

  CoordinatorAction on_response(NetClonePacket pkt, SimTime now) {
    if (!pkt.is_response()) throw std::invalid_argument("coordinator: expected a response");
    CoordinatorAction act{serialize(now), {}, std::nullopt, false};
    ++responses_;

    auto& out = outstanding_.at(pkt.sid);
    if (out > 0) {
      --out;
      idle_.push_back(pkt.sid);
    }

    auto it = inflight_.find(pkt.req_id);
    if (it != inflight_.end()) {
      Inflight& f = it->second;
      if (!f.forwarded) {
        f.forwarded = true;
        NetClonePacket reply = pkt;
        reply.src = endpoint_;
        reply.dst = f.client;
        act.to_client = reply;
      } else {
        ++redundant_;
      }
      if (--f.copies == 0) inflight_.erase(it);
    }

    while (!pending_.empty() && !idle_.empty()) {
      NetClonePacket next = std::move(pending_.front());
      pending_.pop_front();
      dispatch(std::move(next), act);
    }
    return act;
  }

  // Idle slots, counting a server once per free slot.
  std::size_t idle_count() const { return idle_.size(); }
  const std::deque<ServerId>& idle_servers() const { return idle_; }
  std::size_t pending_count() const { return pending_.size(); }
  std::uint32_t outstanding(ServerId s) const { return outstanding_.at(s); }
  std::uint64_t messages_handled() const { return requests_ + responses_; }
  std::uint64_t requests_handled() const { return requests_; }
  std::uint64_t responses_handled() const { return responses_; }
  std::uint64_t redundant_responses() const { return redundant_; }
  std::uint64_t clones() const { return clones_; }
  SimDuration busy_time() const { return delay_ * static_cast<std::int64_t>(messages_handled()); }
  SimTime busy_until() const { return busy_until_; }

 private:
  struct Inflight {
    EndpointId client;
    std::uint32_t copies;
    bool forwarded;
  };

  SimTime serialize(SimTime now) {
    busy_until_ = std::max(now, busy_until_) + delay_;
    return busy_until_;
  }

  ServerId take_idle(std::deque<ServerId>::iterator it) {
    const ServerId s = *it;
    idle_.erase(it);
    ++outstanding_[s];
    return s;
  }

  // Oldest idle slot on a server other than the head's.
  std::deque<ServerId>::iterator second_idle() {
    return std::find_if(idle_.begin() + 1, idle_.end(),
                        [head = idle_.front()](ServerId s) { return s != head; });
  }

  void dispatch(NetClonePacket pkt, CoordinatorAction& act) {
    pkt.src = endpoint_;
    Inflight& f = inflight_.at(pkt.req_id);
    if (auto other = second_idle(); other != idle_.end()) {
      pkt.clo = CloneMark::ClonedOriginal;
      NetClonePacket copy = pkt;
      copy.clo = CloneMark::Clone;
      const ServerId b = take_idle(other);
      const ServerId a = take_idle(idle_.begin());
      act.dispatches.push_back({a, pkt});
      act.dispatches.push_back({b, copy});
      f.copies = 2;
      ++clones_;
    } else {
      pkt.clo = CloneMark::NotCloned;
      act.dispatches.push_back({take_idle(idle_.begin()), pkt});
      f.copies = 1;
    }
  }

  SimDuration delay_;
  EndpointId endpoint_;
  std::deque<ServerId> idle_;
  std::deque<NetClonePacket> pending_;
  std::vector<std::uint32_t> outstanding_;
  std::unordered_map<std::uint32_t, Inflight> inflight_;
  std::uint32_t seq_ = 0;
  std::uint64_t requests_ = 0;
  std::uint64_t responses_ = 0;
  std::uint64_t redundant_ = 0;
  std::uint64_t clones_ = 0;
  SimTime busy_until_{};
};

}  // namespace netclone
