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


#include <biobraille/analysis_metrics.hpp>
#include <biobraille/rng.hpp>

#include <stdexcept>

namespace biobraille {

Point2 spontaneous_baseline(const OrganoidModel &m, const RecordingWindow &window, int windows, std::uint64_t seed) {
  if (windows < 1) throw std::invalid_argument("baseline needs at least one window");
  std::vector<std::uint64_t> seeds;
  for (int w = 0; w < windows; ++w) seeds.push_back(derive_seed(seed, {0xba5e, static_cast<std::uint64_t>(w)}));
  const std::vector<StimPattern> patterns(seeds.size(), StimPattern{});
  const auto trains = stimulate_batch(m, patterns, window, seeds);
  std::vector<Point2> points;
  collect_centers(trains, m.layout, points);
  if (points.empty()) throw UndefinedCenterError();
  return centroid(points);
}

SpatialResult run_spatial(const OrganoidModel &m, const SpatialSpec &spec) {
  if (spec.values.empty()) throw std::invalid_argument("spatial protocol needs at least one value");
  if (spec.trials < 2) throw std::invalid_argument("spatial protocol needs at least two trials");

  SpatialResult r;
  r.baseline = spontaneous_baseline(m, spec.window, spec.baseline_windows, spec.seed);
  r.table.values = spec.values;

  std::vector<std::uint64_t> seeds;
  for (int e = 0; e < kElectrodes; ++e)
    for (int t = 0; t < spec.trials; ++t)
      seeds.push_back(derive_seed(spec.seed, {0x5ba7, static_cast<std::uint64_t>(e), static_cast<std::uint64_t>(t)}));

  for (double v : spec.values) {
    const ElectrodeStim stim = with_param(spec.base, spec.param, v);
    std::vector<StimPattern> patterns;
    for (int e = 0; e < kElectrodes; ++e)
      for (int t = 0; t < spec.trials; ++t) patterns.push_back(StimPattern::single(e, stim));
    const auto trains = stimulate_batch(m, patterns, spec.window, seeds);

    std::vector<CACluster> clusters(kElectrodes);
    std::array<double, kElectrodes> counts{};
    for (int e = 0; e < kElectrodes; ++e) {
      const std::span<const SpikeTrain> mine(trains.data() + static_cast<std::size_t>(e * spec.trials),
                                             static_cast<std::size_t>(spec.trials));
      clusters[e].electrode = e;
      clusters[e].parameter_value = v;
      r.skipped += collect_centers(mine, m.layout, clusters[e].points);
      counts[e] = global_spike_count(mine);
    }

    std::array<double, kElectrodes> sil{}, shift{};
    std::vector<CACluster> usable;
    std::vector<int> owner;
    for (int e = 0; e < kElectrodes; ++e) {
      if (!clusters[e].points.empty()) {
        usable.push_back(clusters[e]);
        owner.push_back(e);
        shift[e] = centroid_shift_um(clusters[e], r.baseline, m.layout.um_per_unit);
      }
    }
    if (usable.size() >= 2) {
      const auto s = silhouette(usable);
      for (std::size_t i = 0; i < owner.size(); ++i) sil[owner[i]] = s.medians[i];
    }
    r.table.silhouette.push_back(sil);
    r.table.shift_um.push_back(shift);
    r.table.spike_count.push_back(counts);
    r.clusters.push_back(std::move(clusters));
  }
  return r;
}

} // namespace biobraille
