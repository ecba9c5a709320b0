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


#pragma once

#include <biobraille/braille_synth.hpp>

#include <cstdint>
#include <span>
#include <vector>

namespace biobraille {

/// Equal-width rows x cols tiling of the sensor plane. Regions are numbered
/// row-major and region r drives electrode r.
struct RegionGrid {
  int rows = 2;
  int cols = 4;

  int region_count() const { return rows * cols; }
  int region_of(int x, int y, int width, int height) const {
    const int col = static_cast<int>(static_cast<std::int64_t>(x) * cols / width);
    const int row = static_cast<int>(static_cast<std::int64_t>(y) * rows / height);
    return row * cols + col;
  }
  void validate() const;
};

struct RegionFeatures {
  std::int64_t event_count = 0;
  std::int64_t event_duration_us = 0; // last - first, 0 with fewer than two events
  std::int64_t peak_time_us = 0;      // midpoint of the busiest window
  double event_deviation = 0.0;       // population std dev of per-window counts

  friend bool operator==(const RegionFeatures &, const RegionFeatures &) = default;
};

struct RegionFeatureSet {
  std::vector<RegionFeatures> regions;

  friend bool operator==(const RegionFeatureSet &, const RegionFeatureSet &) = default;
};

inline constexpr std::int64_t kDefaultFeatureWindowUs = 100'000;

std::vector<std::vector<TactileEvent>> partition(const TactileEventStream &stream, const RegionGrid &grid);

RegionFeatureSet extract_features(const TactileEventStream &stream, const RegionGrid &grid,
                                  std::int64_t window_us = kDefaultFeatureWindowUs);

/// Features of one region from its (time ordered) event timestamps.
RegionFeatures region_features(std::span<const std::int64_t> times_us, std::int64_t duration_us,
                               std::int64_t window_us);

/// Parallel feature extraction over many streams.
std::vector<RegionFeatureSet> extract_features_batch(std::span<const TactileEventStream> streams,
                                                     const RegionGrid &grid,
                                                     std::int64_t window_us = kDefaultFeatureWindowUs);

} // namespace biobraille
