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
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <queue>
#include <random>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "netclone/baselines.hpp"
#include "netclone/client.hpp"
#include "netclone/error.hpp"
#include "netclone/model.hpp"
#include "netclone/server.hpp"
#include "netclone/stats.hpp"
#include "netclone/switch.hpp"
#include "netclone/time.hpp"
#include "netclone/workload.hpp"

namespace netclone {

using namespace std::chrono_literals;

// ---------------------------------------------------------------------------
// Configuration and results
// ---------------------------------------------------------------------------

struct FailureWindow {
  SimTime down_at;
  SimTime up_at;
};

struct RunConfig {
  SchemeId scheme = SchemeId::NetClone;
  // Worker threads per server; the server count is workers.size().
  std::vector<std::size_t> workers = std::vector<std::size_t>(6, 15);
  ServiceDistribution service = presets::exp25();

  double offered_rps = 1e6;
  // Reported as-is in the metrics; the engine only uses offered_rps.
  double load = 0.0;

  SimDuration duration = 1s;
  double warmup_fraction = 0.1;
  // Extra virtual time after arrivals stop for in-flight work to finish.
  // Defaults to the run duration.
  std::optional<SimDuration> drain_limit;
  std::uint64_t seed = 1;

  SwitchGeometry switch_geometry;
  SimDuration link_delay = 1500ns;

  SimDuration client_per_packet_cost = 300ns;
  std::size_t dedupe_window = std::size_t{1} << 20;

  SimDuration server_drop_cost = 300ns;
  bool drop_counts_in_service = false;

  SimDuration coordinator_delay = 2us;
  // Coordinator tracks idleness per worker thread; when false it treats each
  // server as a single slot.
  bool coordinator_per_worker = true;

  std::optional<FailureWindow> failure;
  SimDuration timeline_bin = 1s;

  std::size_t server_count() const { return workers.size(); }
  SimTime end() const { return kTimeZero + duration; }
  SimTime warmup_end() const {
    return kTimeZero + SimDuration{static_cast<std::int64_t>(
                           static_cast<double>(duration.count()) * warmup_fraction)};
  }

  // Throws ConfigError (or BadWindow for the failure window).
  void validate() const {
    const std::size_t n = server_count();
    const std::size_t min_n = scheme == SchemeId::Baseline ? 1 : 2;
    if (n < min_n) {
      throw ConfigError("servers: scheme " + std::string(scheme_name(scheme)) +
                        " needs at least " + std::to_string(min_n) + " servers");
    }
    if (n > 256) throw ConfigError("servers: at most 256 servers are supported");
    for (std::size_t w : workers) {
      if (w == 0) throw ConfigError("workers: every server needs at least one worker");
    }
    service.validate();
    if (!(offered_rps > 0)) throw ConfigError("offered_rps: must be positive");
    if (duration <= SimDuration::zero()) throw ConfigError("duration: must be positive");
    if (!(warmup_fraction >= 0 && warmup_fraction < 1)) {
      throw ConfigError("warmup_fraction: must be in [0,1)");
    }
    if (drain_limit && *drain_limit < SimDuration::zero()) {
      throw ConfigError("drain_limit: must not be negative");
    }
    if (link_delay <= SimDuration::zero()) throw ConfigError("link_delay: must be positive");
    if (switch_geometry.per_packet_delay <= SimDuration::zero()) {
      throw ConfigError("switch.per_packet_delay: must be positive");
    }
    if (switch_geometry.recirc_delay <= SimDuration::zero()) {
      throw ConfigError("switch.recirc_delay: must be positive");
    }
    if (switch_geometry.table_count == 0 || switch_geometry.table_count > 256) {
      throw ConfigError("switch.tables: must be in 1..256");
    }
    if (!std::has_single_bit(switch_geometry.slots_per_table)) {
      throw ConfigError("switch.slots: must be a power of two");
    }
    if (client_per_packet_cost < SimDuration::zero()) {
      throw ConfigError("client.per_packet_cost: must not be negative");
    }
    if (server_drop_cost < SimDuration::zero()) {
      throw ConfigError("cluster.drop_cost: must not be negative");
    }
    if (coordinator_delay <= SimDuration::zero()) {
      throw ConfigError("coordinator.per_message_delay: must be positive");
    }
    if (timeline_bin <= SimDuration::zero()) {
      throw ConfigError("failure.timeline_bin: must be positive");
    }
    if (failure) {
      if (!(failure->down_at > kTimeZero && failure->down_at < failure->up_at &&
            failure->up_at < end())) {
        throw BadWindow("failure window must satisfy 0 < down < up < duration");
      }
    }
  }
};

struct MetricsRecord {
  SchemeId scheme = SchemeId::Baseline;
  double load = 0;
  double offered_rps = 0;
  double achieved_rps = 0;
  double mean_us = 0;
  double p50_us = 0;
  double p99_us = 0;
  double clone_rate = 0;        // clones emitted / requests
  double server_drop_rate = 0;  // clones discarded at servers / clones emitted
  std::uint64_t filter_drops = 0;
  std::uint64_t duplicate_deliveries = 0;
  std::uint64_t seed = 0;
  double duration_s = 0;

  // Whole-run accounting.
  std::uint64_t generated = 0;
  std::uint64_t recorded = 0;
  std::uint64_t lost_to_failure = 0;
  std::uint64_t in_flight_at_end = 0;
  std::uint64_t double_records = 0;
  std::uint64_t server_arrivals = 0;
  std::uint64_t client_responses = 0;
  std::uint64_t coordinator_messages = 0;
  std::uint64_t events_processed = 0;
  std::uint64_t trace_hash = 0;

  // Measurement-window statistics.
  std::uint64_t clones = 0;
  std::uint64_t server_drops = 0;
  double server_sojourn_mean_us = 0;
  double empty_queue_fraction = 0;
  std::uint64_t samples = 0;

  // Per timeline_bin, over [0, duration).
  std::vector<double> timeline_rps;
  std::vector<std::uint64_t> timeline_duplicates;
  double timeline_bin_s = 0;
};

// ---------------------------------------------------------------------------
// Event queue
// ---------------------------------------------------------------------------

enum class EventKind : std::uint8_t {
  ClientSend,
  SwitchIngress,
  Recirculated,
  ServerArrive,
  ServiceComplete,
  SwitchResponse,
  ClientReceive,
  CoordinatorArrive,
  SwitchFail,
  SwitchReset,
};

struct Event {
  SimTime at;
  std::uint64_t seqno = 0;
  EventKind kind = EventKind::ClientSend;
  std::uint16_t server = 0;
  std::uint16_t worker = 0;
  NetClonePacket pkt;
};

// Min-heap on (at, seqno). seqno is the insertion counter, so simultaneous
// events run in creation order.
class EventQueue {
 public:
  void push(Event ev) {
    ev.seqno = next_seqno_++;
    heap_.push(std::move(ev));
  }
  Event pop() {
    Event ev = heap_.top();
    heap_.pop();
    return ev;
  }
  const Event& top() const { return heap_.top(); }
  bool empty() const { return heap_.empty(); }
  std::size_t size() const { return heap_.size(); }

 private:
  struct Later {
    bool operator()(const Event& a, const Event& b) const {
      return a.at != b.at ? a.at > b.at : a.seqno > b.seqno;
    }
  };
  std::priority_queue<Event, std::vector<Event>, Later> heap_;
  std::uint64_t next_seqno_ = 0;
};

// ---------------------------------------------------------------------------
// Simulation
// ---------------------------------------------------------------------------

inline constexpr EndpointId kClientEndpoint = 0;
inline constexpr EndpointId kCoordinatorEndpoint = 1;
inline constexpr EndpointId kFirstServerEndpoint = 2;

inline EndpointId server_endpoint(std::size_t server) {
  return static_cast<EndpointId>(kFirstServerEndpoint + server);
}

// One run: client -> switch -> servers -> switch -> client, plus the
// coordinator host for LAEDGE. Every host hangs off the switch with a
// link_delay hop; each switch pass costs per_packet_delay.
class Simulation {
 public:
  explicit Simulation(RunConfig cfg) : cfg_(std::move(cfg)) {
    cfg_.validate();
    const std::size_t n = cfg_.server_count();

    std::vector<EndpointId> addrs(n);
    for (std::size_t i = 0; i < n; ++i) addrs[i] = server_endpoint(i);
    if (uses_switch_cloning(cfg_.scheme)) {
      const SwitchMode mode = cfg_.scheme == SchemeId::NetCloneRackSched ? SwitchMode::RackSched
                              : cfg_.scheme == SchemeId::NetCloneNoFilter ? SwitchMode::FilterOff
                                                                          : SwitchMode::NetClone;
      switch_ = SwitchState(mode, cfg_.switch_geometry, std::move(addrs));
    }

    ClientConfig cc;
    cc.rate_rps = cfg_.offered_rps;
    cc.group_count = uses_switch_cloning(cfg_.scheme) ? switch_.group_count() : 1;
    cc.table_count = cfg_.switch_geometry.table_count;
    cc.endpoint = kClientEndpoint;
    cc.per_packet_cost = cfg_.client_per_packet_cost;
    cc.dedupe_window = cfg_.dedupe_window;
    cc.seed = cfg_.seed;
    cc.record_from = cfg_.warmup_end();
    client_.emplace(cc);

    std::seed_seq seq{cfg_.seed, std::uint64_t{0x5e57}};
    std::vector<std::uint64_t> seeds(n);
    seq.generate(seeds.begin(), seeds.end());
    server_rngs_.reserve(n);
    servers_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      server_rngs_.emplace_back(seeds[i]);
      ServerConfig sc;
      sc.id = static_cast<ServerId>(i);
      sc.endpoint = server_endpoint(i);
      sc.workers = cfg_.workers[i];
      sc.drop_counts_in_service = cfg_.drop_counts_in_service;
      sc.drop_cost = cfg_.server_drop_cost;
      servers_.emplace_back(sc, [this, i] { return sample_service(cfg_.service, server_rngs_[i]); });
    }

    if (cfg_.scheme == SchemeId::Laedge) {
      if (cfg_.coordinator_per_worker) {
        coordinator_.emplace(cfg_.workers, cfg_.coordinator_delay, kCoordinatorEndpoint);
      } else {
        coordinator_.emplace(n, cfg_.coordinator_delay, kCoordinatorEndpoint);
      }
    }

    const auto bins = static_cast<std::size_t>(
        (cfg_.duration.count() + cfg_.timeline_bin.count() - 1) / cfg_.timeline_bin.count());
    timeline_.assign(bins, 0);
    timeline_dups_.assign(bins, 0);
  }

  Simulation(const Simulation&) = delete;
  Simulation& operator=(const Simulation&) = delete;

  MetricsRecord run() {
    schedule(kTimeZero, EventKind::ClientSend);
    if (cfg_.failure) {
      schedule(cfg_.failure->down_at, EventKind::SwitchFail);
      schedule(cfg_.failure->up_at, EventKind::SwitchReset);
    }
    const SimTime stop = cfg_.end() + cfg_.drain_limit.value_or(cfg_.duration);
    while (!events_.empty() && events_.top().at <= stop) {
      Event ev = events_.pop();
      now_ = ev.at;
      hash_event(ev);
      ++events_processed_;
      dispatch(ev);
    }
    return finish();
  }

  const SwitchState& switch_state() const { return switch_; }
  const std::vector<ServerModel>& servers() const { return servers_; }
  const ClientModel& client() const { return *client_; }

 private:
  bool in_window(const NetClonePacket& p) const { return p.created_at >= cfg_.warmup_end(); }

  void schedule(SimTime at, EventKind kind, NetClonePacket pkt = {}, std::uint16_t server = 0,
                std::uint16_t worker = 0) {
    Event ev;
    ev.at = at;
    ev.kind = kind;
    ev.server = server;
    ev.worker = worker;
    ev.pkt = std::move(pkt);
    events_.push(std::move(ev));
  }

  void hash_event(const Event& ev) {
    auto mix = [this](std::uint64_t v) {
      for (int i = 0; i < 8; ++i) {
        trace_hash_ ^= (v >> (8 * i)) & 0xFF;
        trace_hash_ *= 0x100000001B3ull;
      }
    };
    mix(static_cast<std::uint64_t>(ev.at.time_since_epoch().count()));
    mix(static_cast<std::uint64_t>(ev.kind) | (std::uint64_t{ev.server} << 8) |
        (std::uint64_t{ev.worker} << 24));
    mix(ev.pkt.req_id | (std::uint64_t{static_cast<std::uint8_t>(ev.pkt.clo)} << 32));
    mix(ev.pkt.client_seq);
  }

  void dispatch(Event& ev) {
    switch (ev.kind) {
      case EventKind::ClientSend: on_client_send(); break;
      case EventKind::SwitchIngress: on_switch_ingress(std::move(ev.pkt)); break;
      case EventKind::Recirculated: on_recirculated(std::move(ev.pkt)); break;
      case EventKind::ServerArrive: on_server_arrive(ev.server, std::move(ev.pkt)); break;
      case EventKind::ServiceComplete: on_service_complete(ev.server, ev.worker); break;
      case EventKind::SwitchResponse: on_switch_response(std::move(ev.pkt)); break;
      case EventKind::ClientReceive: on_client_receive(ev.pkt); break;
      case EventKind::CoordinatorArrive: on_coordinator_arrive(std::move(ev.pkt)); break;
      case EventKind::SwitchFail: switch_down_ = true; break;
      case EventKind::SwitchReset:
        switch_down_ = false;
        reset_soft_state(switch_);
        break;
    }
  }

  // Host -> switch.
  void send_to_switch(NetClonePacket pkt, SimTime at) {
    const EventKind kind =
        pkt.is_request() ? EventKind::SwitchIngress : EventKind::SwitchResponse;
    schedule(at + cfg_.link_delay, kind, std::move(pkt));
  }

  // Switch -> host, after one pipeline pass.
  void egress(NetClonePacket pkt) {
    const SimTime at = now_ + cfg_.switch_geometry.per_packet_delay + cfg_.link_delay;
    if (pkt.dst == kClientEndpoint) {
      schedule(at, EventKind::ClientReceive, std::move(pkt));
    } else if (pkt.dst == kCoordinatorEndpoint) {
      schedule(at, EventKind::CoordinatorArrive, std::move(pkt));
    } else {
      const auto server = static_cast<std::uint16_t>(pkt.dst - kFirstServerEndpoint);
      schedule(at, EventKind::ServerArrive, std::move(pkt), server);
    }
  }

  void lose_to_failure(const NetClonePacket& pkt) {
    ++packets_lost_;
    mark(lost_, pkt.client_seq);
  }

  static void mark(std::vector<bool>& bits, std::uint64_t token) {
    if (token >= bits.size()) bits.resize(std::max<std::size_t>(token + 1, bits.size() * 2));
    bits[token] = true;
  }
  static bool marked(const std::vector<bool>& bits, std::uint64_t token) {
    return token < bits.size() && bits[token];
  }

  void on_client_send() {
    NetClonePacket pkt = client_->build_request(now_);
    ++generated_;
    const bool w = in_window(pkt);
    if (w) ++generated_w_;
    const std::size_t n = cfg_.server_count();

    switch (cfg_.scheme) {
      case SchemeId::Baseline:
        pkt.dst = server_endpoint(baseline_route(n, client_->choice_rng()));
        send_to_switch(pkt, now_);
        break;
      case SchemeId::CClone: {
        const auto [a, b] = cclone_route(n, client_->choice_rng());
        pkt.req_id = kClientIdOffset | static_cast<std::uint32_t>(pkt.client_seq & 0x7FFF'FFFFu);
        NetClonePacket copy = pkt;
        pkt.dst = server_endpoint(a);
        copy.dst = server_endpoint(b);
        send_to_switch(pkt, now_);
        send_to_switch(copy, now_);
        if (w) ++clones_w_;
        break;
      }
      case SchemeId::Laedge:
        pkt.dst = kCoordinatorEndpoint;
        send_to_switch(pkt, now_);
        break;
      case SchemeId::NetClone:
      case SchemeId::NetCloneRackSched:
      case SchemeId::NetCloneNoFilter:
        send_to_switch(pkt, now_);
        break;
    }

    const SimTime next = now_ + client_->next_arrival_gap();
    if (next < cfg_.end()) schedule(next, EventKind::ClientSend);
  }

  void on_switch_ingress(NetClonePacket pkt) {
    if (switch_down_) return lose_to_failure(pkt);
    if (!uses_switch_cloning(cfg_.scheme)) return egress(std::move(pkt));

    SwitchAction act = process_request(switch_, std::move(pkt));
    if (auto* fwd = std::get_if<ForwardTo>(&act)) {
      egress(std::move(fwd->pkt));
    } else if (auto* cl = std::get_if<ForwardAndRecirculate>(&act)) {
      if (in_window(cl->pkt)) ++clones_w_;
      schedule(now_ + cfg_.switch_geometry.recirc_delay, EventKind::Recirculated,
               std::move(cl->clone));
      egress(std::move(cl->pkt));
    }
  }

  void on_recirculated(NetClonePacket pkt) {
    if (switch_down_) return lose_to_failure(pkt);
    SwitchAction act = process_request(switch_, std::move(pkt));
    egress(std::move(std::get<ForwardTo>(act).pkt));
  }

  void on_switch_response(NetClonePacket pkt) {
    if (switch_down_) return lose_to_failure(pkt);
    if (!uses_switch_cloning(cfg_.scheme)) return egress(std::move(pkt));

    const bool w = in_window(pkt);
    SwitchAction act = process_response(switch_, std::move(pkt));
    if (auto* fwd = std::get_if<ForwardToClient>(&act)) {
      egress(std::move(fwd->pkt));
    } else if (w) {
      ++filter_drops_w_;
    }
  }

  void on_server_arrive(std::uint16_t s, NetClonePacket pkt) {
    ServerModel& srv = servers_[s];
    if (!srv.dispatcher_ready(now_)) {
      schedule(srv.dispatcher_free_at(), EventKind::ServerArrive, std::move(pkt), s);
      return;
    }
    ++server_arrivals_;
    const bool w = in_window(pkt);
    ArrivalOutcome out = srv.on_request_arrival(std::move(pkt), now_);
    if (out.result == ArrivalResult::DroppedClone) {
      if (w) ++server_drops_w_;
      return;
    }
    if (out.started) {
      schedule(out.started->completes_at, EventKind::ServiceComplete, {}, s,
               static_cast<std::uint16_t>(out.started->worker));
    }
  }

  void on_service_complete(std::uint16_t s, std::uint16_t worker) {
    CompletionOutcome out = servers_[s].on_service_complete(worker, now_);
    if (in_window(out.response)) {
      ++responses_w_;
      if (out.response.state == 0) ++empty_w_;
      sojourn_sum_ns_ += static_cast<double>((now_ - out.response.enqueued_at).count());
    }
    if (out.next) {
      schedule(out.next->completes_at, EventKind::ServiceComplete, {}, s,
               static_cast<std::uint16_t>(out.next->worker));
    }
    send_to_switch(std::move(out.response), now_);
  }

  void on_client_receive(const NetClonePacket& pkt) {
    const ResponseOutcome out = client_->on_response(pkt, now_);
    const bool w = in_window(pkt);
    const bool before_end = out.handled_at < cfg_.end();
    const auto bin = static_cast<std::size_t>(out.handled_at.time_since_epoch().count() /
                                              cfg_.timeline_bin.count());
    if (out.result == ResponseResult::DuplicateIgnored) {
      if (w) ++duplicates_w_;
      if (before_end) ++timeline_dups_[bin];
      return;
    }
    if (marked(recorded_, pkt.client_seq)) ++double_records_;
    mark(recorded_, pkt.client_seq);
    ++recorded_total_;
    if (before_end) {
      ++timeline_[bin];
      if (w) ++achieved_w_;
    }
  }

  void on_coordinator_arrive(NetClonePacket pkt) {
    CoordinatorState& co = *coordinator_;
    const CoordinatorAction act =
        pkt.is_request() ? co.on_request(std::move(pkt), now_) : co.on_response(std::move(pkt), now_);
    if (act.dispatches.size() == 2 && in_window(act.dispatches.front().pkt)) ++clones_w_;
    for (const CoordinatorDispatch& d : act.dispatches) {
      NetClonePacket out = d.pkt;
      out.dst = server_endpoint(d.server);
      send_to_switch(std::move(out), act.ready_at);
    }
    if (act.to_client) send_to_switch(*act.to_client, act.ready_at);
  }

  MetricsRecord finish() {
    MetricsRecord m;
    m.scheme = cfg_.scheme;
    m.load = cfg_.load;
    m.seed = cfg_.seed;
    m.duration_s = to_seconds(cfg_.duration);
    const double window_s = to_seconds(cfg_.end() - cfg_.warmup_end());
    m.offered_rps = static_cast<double>(generated_w_) / window_s;
    m.achieved_rps = static_cast<double>(achieved_w_) / window_s;

    const auto& lat = client_->latencies();
    m.samples = lat.size();
    if (!lat.empty()) {
      std::vector<double> us;
      us.reserve(lat.size());
      for (SimDuration d : lat) us.push_back(to_us(d));
      m.mean_us = mean(us);
      m.p50_us = percentile(us, 50);
      m.p99_us = percentile(us, 99);
    }

    m.clones = clones_w_;
    m.server_drops = server_drops_w_;
    m.clone_rate = generated_w_ ? static_cast<double>(clones_w_) / static_cast<double>(generated_w_) : 0;
    m.server_drop_rate =
        clones_w_ ? std::min(1.0, static_cast<double>(server_drops_w_) / static_cast<double>(clones_w_)) : 0;
    m.filter_drops = filter_drops_w_;
    m.duplicate_deliveries = duplicates_w_;
    m.server_sojourn_mean_us = responses_w_ ? sojourn_sum_ns_ / static_cast<double>(responses_w_) / 1e3 : 0;
    m.empty_queue_fraction =
        responses_w_ ? static_cast<double>(empty_w_) / static_cast<double>(responses_w_) : 0;

    m.generated = generated_;
    m.recorded = recorded_total_;
    for (std::uint64_t t = 1; t <= generated_; ++t) {
      if (marked(lost_, t) && !marked(recorded_, t)) ++m.lost_to_failure;
    }
    m.in_flight_at_end = generated_ - recorded_total_ - m.lost_to_failure;
    m.double_records = double_records_;
    m.server_arrivals = server_arrivals_;
    m.client_responses = client_->responses();
    m.coordinator_messages = coordinator_ ? coordinator_->messages_handled() : 0;
    m.events_processed = events_processed_;
    m.trace_hash = trace_hash_;

    m.timeline_bin_s = to_seconds(cfg_.timeline_bin);
    m.timeline_rps.reserve(timeline_.size());
    for (std::uint64_t c : timeline_) m.timeline_rps.push_back(static_cast<double>(c) / m.timeline_bin_s);
    m.timeline_duplicates = timeline_dups_;
    return m;
  }

  RunConfig cfg_;
  EventQueue events_;
  SimTime now_{};

  SwitchState switch_;
  bool switch_down_ = false;
  std::optional<ClientModel> client_;
  std::vector<Rng> server_rngs_;
  std::vector<ServerModel> servers_;
  std::optional<CoordinatorState> coordinator_;

  std::uint64_t generated_ = 0;
  std::uint64_t generated_w_ = 0;
  std::uint64_t achieved_w_ = 0;
  std::uint64_t recorded_total_ = 0;
  std::uint64_t double_records_ = 0;
  std::uint64_t clones_w_ = 0;
  std::uint64_t server_drops_w_ = 0;
  std::uint64_t filter_drops_w_ = 0;
  std::uint64_t duplicates_w_ = 0;
  std::uint64_t responses_w_ = 0;
  std::uint64_t empty_w_ = 0;
  std::uint64_t server_arrivals_ = 0;
  std::uint64_t packets_lost_ = 0;
  std::uint64_t events_processed_ = 0;
  double sojourn_sum_ns_ = 0;
  std::uint64_t trace_hash_ = 0xCBF29CE484222325ull;
  std::vector<bool> recorded_;
  std::vector<bool> lost_;
  std::vector<std::uint64_t> timeline_;
  std::vector<std::uint64_t> timeline_dups_;
};

inline MetricsRecord run(const RunConfig& cfg) { return Simulation(cfg).run(); }

// ---------------------------------------------------------------------------
// Sweeps and derived experiments
// ---------------------------------------------------------------------------

// Runs independent configurations on a thread pool. Results keep input order.
inline std::vector<MetricsRecord> run_sweep(std::span<const RunConfig> cfgs,
                                            std::size_t threads = 0) {
  std::vector<MetricsRecord> out(cfgs.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, cfgs.size());
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(cfgs.size());
  auto worker = [&] {
    for (std::size_t i = next++; i < cfgs.size(); i = next++) {
      try {
        out[i] = run(cfgs[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

// Offered load the cluster's workers could absorb if perfectly balanced.
inline double worker_capacity_rps(const RunConfig& cfg) {
  const double workers = std::accumulate(cfg.workers.begin(), cfg.workers.end(), 0.0,
                                         [](double a, std::size_t w) { return a + static_cast<double>(w); });
  return workers / (cfg.service.mean_us() * 1e-6);
}

struct SaturationSearch {
  // Bracket; when unset it is derived from worker_capacity_rps.
  std::optional<double> lo_rps;
  std::optional<double> hi_rps;
  int iterations = 9;
  SimDuration probe_duration = 50ms;
  // A probe is stable while achieved/offered stays at or above this.
  double stable_ratio = 0.98;
};

struct SaturationResult {
  double offered_rps = 0;   // highest stable offered load found
  double achieved_rps = 0;  // achieved throughput at that load
  int probes = 0;
};

// Bisection on offered load for the point where achieved/offered drops
// below stable_ratio.
inline SaturationResult find_saturation(RunConfig cfg, const SaturationSearch& s = {}) {
  cfg.duration = s.probe_duration;
  cfg.drain_limit = SimDuration::zero();
  cfg.failure.reset();
  SaturationResult res;
  auto probe = [&](double rps) {
    cfg.offered_rps = rps;
    ++res.probes;
    MetricsRecord m = run(cfg);
    return std::pair{m.offered_rps > 0 && m.achieved_rps / m.offered_rps >= s.stable_ratio,
                     m.achieved_rps};
  };

  const double cap = worker_capacity_rps(cfg);
  double lo = s.lo_rps.value_or(0.2 * cap);
  double hi = s.hi_rps.value_or(1.3 * cap);
  auto [lo_ok, lo_achieved] = probe(lo);
  for (int i = 0; i < 10 && !lo_ok; ++i) {
    hi = lo;
    lo *= 0.5;
    std::tie(lo_ok, lo_achieved) = probe(lo);
  }
  for (int i = 0; i < 10; ++i) {
    auto [ok, achieved] = probe(hi);
    if (!ok) break;
    lo = hi;
    lo_achieved = achieved;
    hi *= 1.5;
  }
  for (int i = 0; i < s.iterations; ++i) {
    const double mid = 0.5 * (lo + hi);
    auto [ok, achieved] = probe(mid);
    if (ok) {
      lo = mid;
      lo_achieved = achieved;
    } else {
      hi = mid;
    }
  }
  res.offered_rps = lo;
  res.achieved_rps = lo_achieved;
  return res;
}

// Fraction of responses that piggyback an empty queue, one value per offered
// rate.
inline std::vector<double> empty_queue_fraction(const RunConfig& base,
                                                std::span<const double> offered_rps) {
  std::vector<RunConfig> cfgs;
  for (double rps : offered_rps) {
    RunConfig c = base;
    c.offered_rps = rps;
    cfgs.push_back(std::move(c));
  }
  std::vector<double> out;
  for (const MetricsRecord& m : run_sweep(cfgs)) out.push_back(m.empty_queue_fraction);
  return out;
}

// Runs `cfg` with the switch down over [down_at, up_at) and a soft-state reset
// at up_at. Returns achieved throughput per timeline bin.
inline std::vector<double> inject_switch_failure(RunConfig cfg, SimTime down_at, SimTime up_at) {
  if (!(down_at > kTimeZero && down_at < up_at && up_at < cfg.end())) {
    throw BadWindow("failure window must satisfy 0 < down < up < duration");
  }
  cfg.failure = FailureWindow{down_at, up_at};
  return run(cfg).timeline_rps;
}

}  // namespace netclone
