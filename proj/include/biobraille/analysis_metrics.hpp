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

#include <biobraille/organoid_sim.hpp>

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace biobraille {

class UndefinedCenterError : public std::domain_error {
public:
  UndefinedCenterError() : std::domain_error("center of activity undefined: no spikes on any channel") {}
};

/// Spike-count weighted centroid of the electrode coordinates.
/// Throws UndefinedCenterError when every count is zero.
Point2 center_of_activity(std::span<const double> counts, const ElectrodeLayout &layout);

/// Counts of spikes per channel inside [start, end).
std::array<double, kElectrodes> channel_counts(const SpikeTrain &train, std::int64_t start_us, std::int64_t end_us);

struct CACluster {
  int electrode = 0;
  double parameter_value = 0.0;
  std::vector<Point2> points;
};

/// CA of every trial with at least one spike; returns how many were skipped.
std::size_t collect_centers(std::span<const SpikeTrain> trains, const ElectrodeLayout &layout,
                            std::vector<Point2> &points);

double distance(const Point2 &a, const Point2 &b);
Point2 centroid(std::span<const Point2> points);

struct SilhouetteResult {
  std::vector<std::vector<double>> scores; // per cluster, per point
  std::vector<double> medians;
};

/// Euclidean silhouette, s = (b - a) / max(a, b). A point alone in its
/// cluster, or with a == b == 0, scores 0. Parallel over points.
SilhouetteResult silhouette(std::span<const CACluster> clusters);

double median(std::vector<double> values);

/// ||mean(cluster) - baseline|| in micrometres.
double centroid_shift_um(const CACluster &cluster, const Point2 &baseline, double um_per_unit);

/// Mean over trials of the summed channel counts.
double global_spike_count(std::span<const SpikeTrain> trains);

/// Bootstrap standard error of the distance between two cluster centroids.
double bootstrap_centroid_distance_se(std::span<const Point2> a, std::span<const Point2> b, int resamples,
                                      std::uint64_t seed);

/// Silhouette median, centroid shift and global count for every
/// (parameter value, electrode) cell; indexed [value][electrode].
struct SpatialMetricTable {
  std::vector<double> values;
  std::vector<std::array<double, kElectrodes>> silhouette;
  std::vector<std::array<double, kElectrodes>> shift_um;
  std::vector<std::array<double, kElectrodes>> spike_count;
};

struct RadarSummary {
  std::vector<double> values;
  std::vector<std::array<double, 3>> radii; // silhouette, shift, count
  std::vector<double> area;
  std::array<bool, 3> degenerate{};
};

/// Each metric min-max normalised over all values and electrodes, then
/// averaged over electrodes. Degenerate metrics get radius 0.5.
RadarSummary radar_summary(const SpatialMetricTable &table);

struct SpatialSpec {
  StimParam param = StimParam::pulses;
  std::vector<double> values;
  int trials = 100;
  int baseline_windows = 200;
  std::uint64_t seed = 0;
  ElectrodeStim base = kSpatialDefaults;
  RecordingWindow window{0, 500'000};
};

struct SpatialResult {
  SpatialMetricTable table;
  std::vector<std::vector<CACluster>> clusters; // [value][electrode]
  Point2 baseline;
  std::size_t skipped = 0; // zero-spike trials left out of the CA clouds
};

/// CA clouds of every (value, electrode) cell and their metrics. Trial
/// seeds depend on (electrode, trial) only.
SpatialResult run_spatial(const OrganoidModel &m, const SpatialSpec &spec);

/// Spontaneous-activity CA centroid over `windows` unstimulated windows.
Point2 spontaneous_baseline(const OrganoidModel &m, const RecordingWindow &window, int windows, std::uint64_t seed);

/// Area of a three-axis radar polygon with 120 degree spacing.
double radar_area(const std::array<double, 3> &radii);

} // namespace biobraille
