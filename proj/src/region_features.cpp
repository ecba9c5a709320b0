/*
 * Copyright (C) 2026 The biobraille Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


#include <biobraille/region_features.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace biobraille {

void RegionGrid::validate() const {
  if (rows < 1 || cols < 1) throw std::invalid_argument("grid needs at least one row and one column");
}

std::vector<std::vector<TactileEvent>> partition(const TactileEventStream &stream, const RegionGrid &grid) {
  grid.validate();
  std::vector<std::vector<TactileEvent>> out(static_cast<std::size_t>(grid.region_count()));
  for (const auto &e : stream.events) {
    out[static_cast<std::size_t>(grid.region_of(e.x, e.y, stream.width, stream.height))].push_back(e);
  }
  return out;
}

RegionFeatures region_features(std::span<const std::int64_t> times_us, std::int64_t duration_us,
                               std::int64_t window_us) {
  if (window_us <= 0) throw std::invalid_argument("window_us must be positive");
  if (duration_us <= 0) throw std::invalid_argument("duration_us must be positive");
  RegionFeatures f;
  if (times_us.empty()) return f;

  const auto [lo, hi] = std::minmax_element(times_us.begin(), times_us.end());
  f.event_count = static_cast<std::int64_t>(times_us.size());
  f.event_duration_us = *hi - *lo;

  // Windows tile [0, duration); an event at exactly t == duration joins the last one.
  const std::int64_t windows = (duration_us + window_us - 1) / window_us;
  std::vector<std::int64_t> counts(static_cast<std::size_t>(windows), 0);
  for (std::int64_t t : times_us) {
    const std::int64_t w = std::clamp<std::int64_t>(t / window_us, 0, windows - 1);
    ++counts[static_cast<std::size_t>(w)];
  }

  const auto peak = std::max_element(counts.begin(), counts.end()); // first maximum on ties
  const std::int64_t w = peak - counts.begin();
  const std::int64_t start = w * window_us;
  const std::int64_t end = std::min(start + window_us, duration_us);
  f.peak_time_us = (start + end) / 2;

  const double mean = static_cast<double>(f.event_count) / static_cast<double>(windows);
  double ss = 0.0;
  for (std::int64_t c : counts) {
    const double d = static_cast<double>(c) - mean;
    ss += d * d;
  }
  f.event_deviation = std::sqrt(ss / static_cast<double>(windows));
  return f;
}

RegionFeatureSet extract_features(const TactileEventStream &stream, const RegionGrid &grid, std::int64_t window_us) {
  grid.validate();
  std::vector<std::vector<std::int64_t>> times(static_cast<std::size_t>(grid.region_count()));
  for (const auto &e : stream.events) {
    times[static_cast<std::size_t>(grid.region_of(e.x, e.y, stream.width, stream.height))].push_back(e.t_us);
  }
  RegionFeatureSet out;
  out.regions.reserve(times.size());
  for (const auto &ts : times) out.regions.push_back(region_features(ts, stream.duration_us, window_us));
  return out;
}

std::vector<RegionFeatureSet> extract_features_batch(std::span<const TactileEventStream> streams,
                                                     const RegionGrid &grid, std::int64_t window_us) {
  std::vector<RegionFeatureSet> out(streams.size());
  const auto n = static_cast<std::ptrdiff_t>(streams.size());
#pragma omp parallel for schedule(dynamic, 8)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = extract_features(streams[i], grid, window_us);
  return out;
}

} // namespace biobraille
