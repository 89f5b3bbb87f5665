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


// Acceptance run: one PASS/FAIL line per criterion. Tolerances are pinned
// below; the process exits non-zero if any criterion fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "netclone.hpp"

namespace {

using namespace netclone;
using namespace std::chrono_literals;

// ---------------------------------------------------------------- tolerances

constexpr double kMM1Tolerance = 0.05;          // relative, mean sojourn
constexpr double kMM1MaxWallSeconds = 60.0;
constexpr std::uint64_t kMM1MinSamples = 1'000'000;
constexpr double kCCloneRatio = 0.50;
constexpr double kCCloneRatioTolerance = 0.10;  // absolute
constexpr double kParityTolerance = 0.05;       // relative
constexpr double kMinImprovement = 1.2;
constexpr double kLaedgeBoundSlack = 0.10;      // relative
constexpr double kOutageFraction = 0.01;        // outage throughput vs pre-failure
constexpr double kRecoveryTolerance = 0.05;     // relative
constexpr double kDuplicateSlack = 0.001;       // duplicates per response
constexpr double kCapacityTolerance = 0.005;    // relative

// ---------------------------------------------------------------- plumbing

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& title, const Outcome& o) {
  std::printf("AC%-2d %s  %s: %s\n", id, o.pass ? "PASS" : "FAIL", title.c_str(), o.detail.c_str());
  std::fflush(stdout);
  if (!o.pass) ++failures;
}

template <class... Args>
std::string fmt(const char* f, Args... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

RunConfig default_cluster(SchemeId scheme) {
  RunConfig c;
  c.scheme = scheme;
  c.workers = std::vector<std::size_t>(6, 15);
  c.service = presets::exp25(0.01);
  return c;
}

SaturationSearch probe_settings() {
  SaturationSearch s;
  s.probe_duration = 100ms;
  s.iterations = 9;
  return s;
}

double mean_p99(RunConfig c, std::initializer_list<std::uint64_t> seeds) {
  double acc = 0;
  for (std::uint64_t s : seeds) {
    c.seed = s;
    acc += run(c).p99_us;
  }
  return acc / static_cast<double>(seeds.size());
}

// ---------------------------------------------------------------- AC1

Outcome mm1() {
  RunConfig c;
  c.scheme = SchemeId::Baseline;
  c.workers = {1};
  c.service = ServiceDistribution{Exponential{25}, 0.0, 15};
  c.offered_rps = 0.5 / 25e-6;
  c.duration = 60s;
  c.seed = 1;
  const auto t0 = std::chrono::steady_clock::now();
  const MetricsRecord m = run(c);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const double lambda = c.offered_rps, mu = 1.0 / 25e-6;
  const double analytic = 1e6 / (mu - lambda);
  const double err = std::abs(m.server_sojourn_mean_us - analytic) / analytic;
  return {err <= kMM1Tolerance && m.samples >= kMM1MinSamples && wall < kMM1MaxWallSeconds,
          fmt("sojourn %.2f us vs 1/(mu-lambda) %.2f us (err %.2f%%, tol %.0f%%), %llu samples, %.1f s wall",
              m.server_sojourn_mean_us, analytic, 100 * err, 100 * kMM1Tolerance,
              static_cast<unsigned long long>(m.samples), wall)};
}

// ---------------------------------------------------------------- AC2, AC3

struct Saturations {
  double baseline = 0, cclone = 0, netclone = 0;
};

Saturations six_server_saturations() {
  Saturations s;
  s.baseline = find_saturation(default_cluster(SchemeId::Baseline), probe_settings()).offered_rps;
  s.cclone = find_saturation(default_cluster(SchemeId::CClone), probe_settings()).offered_rps;
  s.netclone = find_saturation(default_cluster(SchemeId::NetClone), probe_settings()).offered_rps;
  return s;
}

Outcome cclone_halves(const Saturations& s) {
  const double ratio = s.cclone / s.baseline;
  return {std::abs(ratio - kCCloneRatio) <= kCCloneRatioTolerance,
          fmt("cclone %.0f rps / baseline %.0f rps = %.3f (want %.2f +- %.2f)", s.cclone, s.baseline,
              ratio, kCCloneRatio, kCCloneRatioTolerance)};
}

Outcome netclone_parity(const Saturations& s) {
  const double rel = std::abs(s.netclone - s.baseline) / s.baseline;
  return {rel <= kParityTolerance,
          fmt("netclone %.0f rps vs baseline %.0f rps (diff %.2f%%, tol %.0f%%)", s.netclone,
              s.baseline, 100 * rel, 100 * kParityTolerance)};
}

// ---------------------------------------------------------------- AC4

Outcome tail_improvement(double baseline_sat) {
  std::string detail;
  double acc = 0;
  int n = 0;
  for (double load : {0.1, 0.2, 0.3, 0.4, 0.5, 0.6}) {
    RunConfig b = default_cluster(SchemeId::Baseline);
    RunConfig nc = default_cluster(SchemeId::NetClone);
    b.offered_rps = nc.offered_rps = load * baseline_sat;
    b.duration = nc.duration = 200ms;
    const double pb = mean_p99(b, {1, 2});
    const double pn = mean_p99(nc, {1, 2});
    acc += pb / pn;
    ++n;
    detail += fmt("%.1f:%.2f ", load, pb / pn);
  }
  const double ratio = acc / n;
  return {ratio >= kMinImprovement,
          fmt("mean baseline/netclone p99 = %.3f (want >= %.1f); per load %s", ratio, kMinImprovement,
              detail.c_str())};
}

// ---------------------------------------------------------------- AC5

Outcome laedge_bottleneck() {
  RunConfig la = default_cluster(SchemeId::Laedge);
  la.workers = std::vector<std::size_t>(5, 15);
  RunConfig nc = default_cluster(SchemeId::NetClone);
  nc.workers = la.workers;

  const SaturationResult lsat = find_saturation(la, probe_settings());
  const SaturationResult nsat = find_saturation(nc, probe_settings());

  // Messages per request measured at LAEDGE's own saturation point.
  la.offered_rps = lsat.offered_rps;
  la.duration = 100ms;
  const MetricsRecord m = run(la);
  const double mpr = static_cast<double>(m.coordinator_messages) / static_cast<double>(m.generated);
  const double bound = 1.0 / (to_seconds(la.coordinator_delay) * mpr);
  return {lsat.offered_rps <= (1 + kLaedgeBoundSlack) * bound && lsat.offered_rps < nsat.offered_rps,
          fmt("laedge %.0f rps, bound 1/(2us x %.3f msg/req) = %.0f rps (x%.3f, limit %.2f), "
              "netclone %.0f rps",
              lsat.offered_rps, mpr, bound, lsat.offered_rps / bound, 1 + kLaedgeBoundSlack,
              nsat.offered_rps)};
}

// ---------------------------------------------------------------- AC6

Outcome filter_crossover(double baseline_sat) {
  bool ok = true;
  std::string detail;
  double highest_stable = 0;
  double nofilter_at_highest = 0, baseline_at_highest = 0;
  for (double load : {0.7, 0.8, 0.9}) {
    double p[3] = {0, 0, 0};
    bool stable = true;
    const SchemeId schemes[3] = {SchemeId::Baseline, SchemeId::NetClone, SchemeId::NetCloneNoFilter};
    for (int k = 0; k < 3; ++k) {
      RunConfig c = default_cluster(schemes[k]);
      c.offered_rps = load * baseline_sat;
      c.duration = 200ms;
      for (std::uint64_t seed : {1, 2, 3}) {
        c.seed = seed;
        const MetricsRecord m = run(c);
        p[k] += m.p99_us / 3;
        if (k == 0 && m.achieved_rps < 0.98 * m.offered_rps) stable = false;
      }
    }
    if (p[2] < p[1]) ok = false;
    if (stable) {
      highest_stable = load;
      baseline_at_highest = p[0];
      nofilter_at_highest = p[2];
    }
    detail += fmt("[%.1f base %.0f nc %.0f nofilter %.0f%s] ", load, p[0], p[1], p[2],
                  stable ? "" : " unstable");
  }
  if (highest_stable == 0 || nofilter_at_highest < baseline_at_highest) ok = false;
  return {ok, fmt("p99 us %s; highest stable load %.1f", detail.c_str(), highest_stable)};
}

// ---------------------------------------------------------------- AC7

Outcome empty_queue_monotone(double baseline_sat) {
  const std::vector<double> loads = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  const std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5};
  std::vector<double> means, ses;
  for (double load : loads) {
    std::vector<double> f;
    for (std::uint64_t s : seeds) {
      RunConfig c = default_cluster(SchemeId::NetClone);
      c.offered_rps = load * baseline_sat;
      c.duration = 100ms;
      c.seed = s;
      f.push_back(run(c).empty_queue_fraction);
    }
    means.push_back(mean(f));
    ses.push_back(stddev(f) / std::sqrt(static_cast<double>(f.size())));
  }
  bool ok = means.back() > 0;
  std::string detail;
  for (std::size_t i = 0; i < loads.size(); ++i) {
    detail += fmt("%.1f:%.4f ", loads[i], means[i]);
    if (i > 0) {
      // Allowed rise: three combined standard errors of the two means.
      const double slack = 3 * std::hypot(ses[i], ses[i - 1]);
      if (means[i] > means[i - 1] + slack) ok = false;
    }
  }
  return {ok, fmt("fraction by load %s(nonincreasing within 3 combined SE, >0 at 0.9)", detail.c_str())};
}

// ---------------------------------------------------------------- AC8

Outcome racksched_hetero() {
  RunConfig base;
  base.scheme = SchemeId::Baseline;
  base.workers = {15, 15, 15, 8, 8, 8};
  base.service = presets::bimodal_90_25_250(0.01);
  const double sat = find_saturation(base, probe_settings()).offered_rps;
  bool ok = true;
  std::string detail;
  for (double load : {0.6, 0.7, 0.8, 0.9}) {
    RunConfig random = base, jsq = base;
    random.scheme = SchemeId::NetClone;
    jsq.scheme = SchemeId::NetCloneRackSched;
    random.offered_rps = jsq.offered_rps = load * sat;
    random.duration = jsq.duration = 300ms;
    const double pr = mean_p99(random, {1, 2, 3});
    const double pj = mean_p99(jsq, {1, 2, 3});
    if (pj > pr) ok = false;
    detail += fmt("[%.1f random %.0f jsq %.0f] ", load, pr, pj);
  }
  return {ok, fmt("baseline saturation %.0f rps; p99 us %s", sat, detail.c_str())};
}

// ---------------------------------------------------------------- AC9

Outcome failure_recovery() {
  RunConfig c = default_cluster(SchemeId::NetClone);
  c.offered_rps = 3e5;
  c.duration = 10s;
  c.timeline_bin = 1s;
  c.failure = FailureWindow{SimTime{} + 5s, SimTime{} + 7s};
  const MetricsRecord m = run(c);
  const auto& tp = m.timeline_rps;
  const auto& dup = m.timeline_duplicates;
  auto avg = [&](std::size_t a, std::size_t b) {
    double s = 0;
    for (std::size_t i = a; i < b; ++i) s += tp[i];
    return s / static_cast<double>(b - a);
  };
  auto dup_rate = [&](std::size_t a, std::size_t b) {
    double d = 0, r = 0;
    for (std::size_t i = a; i < b; ++i) {
      d += static_cast<double>(dup[i]);
      r += tp[i] * m.timeline_bin_s;
    }
    return d / (d + r);
  };
  const double pre = avg(1, 5), during = avg(5, 7), post = avg(8, 10);
  const double dpre = dup_rate(1, 5), dpost = dup_rate(8, 10);
  const bool ok = during < kOutageFraction * pre && std::abs(post - pre) / pre <= kRecoveryTolerance &&
                  dpost <= dpre + kDuplicateSlack && m.double_records == 0;
  return {ok, fmt("pre %.0f rps, outage %.0f rps, post %.0f rps (diff %.2f%%); duplicates/response "
                  "pre %.5f post %.5f",
                  pre, during, post, 100 * std::abs(post - pre) / pre, dpre, dpost)};
}

// ---------------------------------------------------------------- AC10

struct SuiteResult {
  std::vector<std::string> failed;
  void check(bool cond, const std::string& name) {
    if (!cond && std::find(failed.begin(), failed.end(), name) == failed.end()) failed.push_back(name);
  }
};

std::vector<EndpointId> endpoints(std::size_t n) {
  std::vector<EndpointId> e(n);
  for (std::size_t i = 0; i < n; ++i) e[i] = static_cast<EndpointId>(kFirstServerEndpoint + i);
  return e;
}

NetClonePacket as_response(NetClonePacket p, ServerId sid, std::uint8_t state) {
  p.type = MsgType::Response;
  p.sid = sid;
  p.state = state;
  return p;
}

void switch_suites(SuiteResult& r) {
  for (SwitchMode mode : {SwitchMode::NetClone, SwitchMode::RackSched, SwitchMode::FilterOff}) {
    SwitchGeometry g;
    g.slots_per_table = 32;
    SwitchState st(mode, g, endpoints(4));
    std::mt19937_64 rng(99);
    std::vector<NetClonePacket> pending;
    std::uint32_t expect_seq = 1;
    for (int step = 0; step < 50000; ++step) {
      if (step == 25000) {
        reset_soft_state(st);
        expect_seq = 1;
        pending.clear();
      }
      if (pending.empty() || rng() % 2) {
        NetClonePacket req;
        req.grp = static_cast<GroupId>(rng() % st.group_count());
        req.idx = static_cast<TableIndex>(rng() % g.table_count);
        const GroupEntry cand = st.grp_table[req.grp];
        const bool idle = st.state_table[cand.first] == 0 && st.shadow_table[cand.second] == 0;
        SwitchAction act = process_request(st, req);
        if (auto* fr = std::get_if<ForwardAndRecirculate>(&act)) {
          r.check(idle, "CLONE-GATE");
          r.check(fr->pkt.req_id == expect_seq, "SEQ-MONOTONE");
          const std::uint32_t seq_before = st.seq;
          NetClonePacket clone = std::get<ForwardTo>(process_request(st, fr->clone)).pkt;
          r.check(st.seq == seq_before, "SEQ-MONOTONE");
          r.check(clone.req_id == fr->pkt.req_id && clone.grp == fr->pkt.grp && clone.idx == fr->pkt.idx &&
                      fr->pkt.clo == CloneMark::ClonedOriginal && clone.clo == CloneMark::Clone,
                  "CLONE-IDENTITY");
          pending.push_back(as_response(fr->pkt, cand.first, 0));
          pending.push_back(as_response(clone, cand.second, 0));
        } else {
          r.check(!idle, "CLONE-GATE");
          const NetClonePacket& p = std::get<ForwardTo>(act).pkt;
          r.check(p.req_id == expect_seq, "SEQ-MONOTONE");
          r.check(p.clo == CloneMark::NotCloned, "CLONE-GATE");
          const ServerId sid = p.dst == st.addr_table[cand.first] ? cand.first : cand.second;
          pending.push_back(as_response(p, sid, 0));
        }
        ++expect_seq;
      } else {
        const std::size_t k = rng() % pending.size();
        NetClonePacket resp = pending[k];
        pending.erase(pending.begin() + static_cast<std::ptrdiff_t>(k));
        resp.state = static_cast<std::uint8_t>(rng() % 3 == 0 ? 1 + rng() % 3 : 0);
        SwitchAction act = process_response(st, resp);
        if (!resp.cloned()) r.check(std::holds_alternative<ForwardToClient>(act), "NONCLONED-NEVER-FILTERED");
        r.check(st.state_table == st.shadow_table, "TABLE-CONSISTENCY");
      }
    }
  }
}

// All 720 orderings of the six responses of three cloned requests, over
// geometries with and without slot sharing.
void exactly_one_suite(SuiteResult& r) {
  struct Case {
    std::size_t tables, slots;
    std::array<TableIndex, 3> idx;
  };
  const Case cases[] = {{2, 1u << 17, {0, 1, 0}}, {2, 1, {0, 0, 0}}, {2, 1, {0, 1, 1}}, {1, 1, {0, 0, 0}}};
  for (const Case& c : cases) {
    SwitchGeometry g;
    g.table_count = c.tables;
    g.slots_per_table = c.slots;
    SwitchState proto(SwitchMode::NetClone, g, endpoints(2));
    std::vector<NetClonePacket> resp;
    for (int i = 0; i < 3; ++i) {
      NetClonePacket req;
      req.grp = static_cast<GroupId>(i % 2);
      req.idx = c.idx[static_cast<std::size_t>(i)];
      auto fr = std::get<ForwardAndRecirculate>(process_request(proto, req));
      auto clone = std::get<ForwardTo>(process_request(proto, fr.clone)).pkt;
      const GroupEntry cand = proto.grp_table[req.grp];
      resp.push_back(as_response(fr.pkt, cand.first, 0));
      resp.push_back(as_response(clone, cand.second, 0));
    }
    auto key = [&](const NetClonePacket& p) { return std::pair{p.idx, hash_slot(p.req_id, c.slots)}; };
    std::array<int, 6> order = {0, 1, 2, 3, 4, 5};
    do {
      SwitchState st = proto;
      std::map<std::uint32_t, int> fwd;
      std::map<std::uint32_t, std::vector<int>> at;
      for (int pos = 0; pos < 6; ++pos) {
        const NetClonePacket& p = resp[static_cast<std::size_t>(order[static_cast<std::size_t>(pos)])];
        at[p.req_id].push_back(pos);
        if (std::holds_alternative<ForwardToClient>(process_response(st, p))) ++fwd[p.req_id];
      }
      for (const auto& [id, pos] : at) {
        r.check(fwd[id] >= 1, "EXACTLY-ONE");
        bool clean = true;
        const auto k = key(resp[static_cast<std::size_t>(order[static_cast<std::size_t>(pos[0])])]);
        for (int q = pos[0] + 1; q < pos[1]; ++q) {
          const NetClonePacket& o = resp[static_cast<std::size_t>(order[static_cast<std::size_t>(q)])];
          if (o.req_id != id && key(o) == k) clean = false;
        }
        if (clean) {
          r.check(fwd[id] == 1, "EXACTLY-ONE");
          r.check(st.filter_slot(k.first, k.second) != id, "EXACTLY-ONE");
        }
      }
    } while (std::next_permutation(order.begin(), order.end()));
  }
}

void server_suites(SuiteResult& r) {
  // DROP-SCOPE: only clo=2 arrivals are ever dropped.
  std::mt19937_64 rng(5);
  ServerConfig cfg;
  cfg.workers = 2;
  ServerModel srv(cfg, [] { return SimDuration{1000}; });
  SimTime now{};
  std::vector<std::pair<SimTime, std::size_t>> running;
  std::vector<std::uint32_t> admitted, started;
  for (std::uint32_t i = 0; i < 20000; ++i) {
    now += SimDuration{static_cast<std::int64_t>(rng() % 900)};
    std::sort(running.begin(), running.end());
    while (!running.empty() && running.front().first <= now) {
      auto out = srv.on_service_complete(running.front().second, running.front().first);
      running.erase(running.begin());
      if (out.next) {
        started.push_back(out.next->request.req_id);
        running.push_back({out.next->completes_at, out.next->worker});
      }
    }
    if (!srv.dispatcher_ready(now)) now = srv.dispatcher_free_at();
    NetClonePacket p;
    p.req_id = i;
    p.clo = static_cast<CloneMark>(rng() % 3);
    const std::uint64_t drops_before = srv.drops();
    auto out = srv.on_request_arrival(p, now);
    if (out.result == ArrivalResult::DroppedClone) {
      r.check(p.clo == CloneMark::Clone, "DROP-SCOPE");
      r.check(srv.drops() == drops_before + 1, "DROP-SCOPE");
    } else {
      admitted.push_back(i);
      r.check(srv.drops() == drops_before, "DROP-SCOPE");
    }
    if (out.started) {
      started.push_back(out.started->request.req_id);
      running.push_back({out.started->completes_at, out.started->worker});
    }
  }
  // FCFS: start order equals admission order.
  r.check(std::equal(started.begin(), started.end(), admitted.begin()), "FCFS");
}

void engine_suites(SuiteResult& r) {
  for (SchemeId s : {SchemeId::Baseline, SchemeId::NetClone, SchemeId::NetCloneRackSched}) {
    RunConfig c = default_cluster(s);
    c.offered_rps = 1.5e6;
    c.duration = 50ms;
    const MetricsRecord a = run(c);
    r.check(a.generated == a.recorded && a.double_records == 0 && a.in_flight_at_end == 0, "CONSERVATION");
    const MetricsRecord b = run(c);
    r.check(a.trace_hash == b.trace_hash && a.p99_us == b.p99_us, "DETERMINISM");
  }
  RunConfig f = default_cluster(SchemeId::NetClone);
  f.offered_rps = 1e6;
  f.duration = 100ms;
  f.timeline_bin = 10ms;
  f.failure = FailureWindow{SimTime{} + 40ms, SimTime{} + 60ms};
  const MetricsRecord m = run(f);
  r.check(m.generated == m.recorded + m.lost_to_failure + m.in_flight_at_end && m.lost_to_failure > 0,
          "CONSERVATION");
}

void codec_suite(SuiteResult& r) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 100000; ++i) {
    NetClonePacket p;
    p.type = rng() % 2 ? MsgType::Request : MsgType::Response;
    p.req_id = static_cast<std::uint32_t>(rng());
    p.grp = static_cast<GroupId>(rng());
    p.sid = static_cast<ServerId>(rng() % 256);
    p.state = static_cast<std::uint8_t>(rng());
    p.clo = static_cast<CloneMark>(rng() % 3);
    p.idx = static_cast<TableIndex>(rng());
    const HeaderBytes b = encode_header(p);
    r.check(b.size() == kHeaderSize && same_header(decode_header(b), p), "codec round-trip");
  }
}

Outcome invariant_suites() {
  SuiteResult r;
  switch_suites(r);
  exactly_one_suite(r);
  server_suites(r);
  engine_suites(r);
  codec_suite(r);
  std::string failed;
  for (const auto& f : r.failed) failed += f + " ";
  return {r.failed.empty(),
          r.failed.empty() ? "TABLE-CONSISTENCY CLONE-GATE SEQ-MONOTONE CLONE-IDENTITY EXACTLY-ONE "
                             "NONCLONED-NEVER-FILTERED DROP-SCOPE FCFS CONSERVATION DETERMINISM codec"
                           : "failed: " + failed};
}

// ---------------------------------------------------------------- AC11

Outcome capacity() {
  const double v = capacity_estimate(std::uint64_t{1} << 18, 50us);
  const double want = 5.24e9;
  return {std::abs(v - want) / want <= kCapacityTolerance,
          fmt("capacity_estimate(2^18, 50 us) = %.4e (want %.2e +- %.1f%%)", v, want, 100 * kCapacityTolerance)};
}

}  // namespace

int main() {
  report(1, "M/M/1 oracle", mm1());
  const Saturations sat = six_server_saturations();
  std::printf("     saturation (6 servers, Exp(25), p=0.01): baseline %.0f cclone %.0f netclone %.0f rps\n",
              sat.baseline, sat.cclone, sat.netclone);
  report(2, "C-Clone halves capacity", cclone_halves(sat));
  report(3, "NetClone throughput parity", netclone_parity(sat));
  report(4, "tail-latency improvement", tail_improvement(sat.baseline));
  report(5, "LAEDGE coordinator bottleneck", laedge_bottleneck());
  report(6, "filter ablation crossover", filter_crossover(sat.baseline));
  report(7, "empty-queue fraction monotonicity", empty_queue_monotone(sat.baseline));
  report(8, "RackSched under heterogeneity", racksched_hetero());
  report(9, "switch failure recovery", failure_recovery());
  report(10, "invariant suites", invariant_suites());
  report(11, "filter capacity formula", capacity());
  std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
