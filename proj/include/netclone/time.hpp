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

#include <chrono>
#include <cmath>
#include <cstdint>

namespace netclone {

// Virtual clock of a simulation run. Time zero is the start of the run and
// the resolution is one nanosecond.
struct SimClock {
  using rep = std::int64_t;
  using period = std::nano;
  using duration = std::chrono::duration<rep, period>;
  using time_point = std::chrono::time_point<SimClock>;
  static constexpr bool is_steady = true;
};

using SimDuration = SimClock::duration;
using SimTime = SimClock::time_point;

inline constexpr SimTime kTimeZero{};

inline double to_us(SimDuration d) {
  return std::chrono::duration<double, std::micro>(d).count();
}

inline double to_seconds(SimDuration d) {
  return std::chrono::duration<double>(d).count();
}

inline double to_us(SimTime t) { return to_us(t.time_since_epoch()); }

// Rounds to the nearest nanosecond.
inline SimDuration from_us(double us) {
  return SimDuration{static_cast<std::int64_t>(std::llround(us * 1e3))};
}

inline SimDuration from_seconds(double s) {
  return SimDuration{static_cast<std::int64_t>(std::llround(s * 1e9))};
}

inline SimTime at_us(double us) { return SimTime{from_us(us)}; }

}  // namespace netclone
