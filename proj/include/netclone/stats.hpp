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
#include <cmath>
#include <cstddef>
#include <iterator>
#include <numeric>
#include <ranges>
#include <vector>

#include "netclone/error.hpp"

namespace netclone {

// Nearest-rank percentile: the element at 1-based rank ceil(q/100 * N) of
// the sorted samples.
template <std::ranges::input_range R>
auto percentile(const R& samples, double q) {
  using T = std::ranges::range_value_t<R>;
  std::vector<T> v(std::ranges::begin(samples), std::ranges::end(samples));
  if (v.empty()) throw EmptySamples("percentile of an empty sample set");
  if (!(q >= 0.0 && q <= 100.0)) throw std::invalid_argument("percentile q must be in [0,100]");
  auto rank = static_cast<std::size_t>(std::ceil(q / 100.0 * static_cast<double>(v.size())));
  rank = std::clamp<std::size_t>(rank, 1, v.size());
  auto nth = v.begin() + static_cast<std::ptrdiff_t>(rank - 1);
  std::nth_element(v.begin(), nth, v.end());
  return *nth;
}

template <std::ranges::input_range R>
double mean(const R& samples) {
  double sum = 0;
  std::size_t n = 0;
  for (const auto& s : samples) {
    sum += static_cast<double>(s);
    ++n;
  }
  if (n == 0) throw EmptySamples("mean of an empty sample set");
  return sum / static_cast<double>(n);
}

// Sample standard deviation (n - 1 denominator); 0 for a single sample.
template <std::ranges::input_range R>
double stddev(const R& samples) {
  const double m = mean(samples);
  double acc = 0;
  std::size_t n = 0;
  for (const auto& s : samples) {
    const double d = static_cast<double>(s) - m;
    acc += d * d;
    ++n;
  }
  return n > 1 ? std::sqrt(acc / static_cast<double>(n - 1)) : 0.0;
}

}  // namespace netclone
