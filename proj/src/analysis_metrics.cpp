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

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <numeric>

namespace biobraille {

Point2 center_of_activity(std::span<const double> counts, const ElectrodeLayout &layout) {
  if (counts.size() != layout.coords.size()) throw std::invalid_argument("one count per electrode required");
  double total = 0.0, sx = 0.0, sy = 0.0;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    if (counts[k] < 0) throw std::invalid_argument("spike counts must be nonnegative");
    total += counts[k];
    sx += counts[k] * layout.coords[k].x;
    sy += counts[k] * layout.coords[k].y;
  }
  if (!(total > 0)) throw UndefinedCenterError();
  return {sx / total, sy / total};
}

std::array<double, kElectrodes> channel_counts(const SpikeTrain &train, std::int64_t start_us, std::int64_t end_us) {
  std::array<double, kElectrodes> c{};
  for (std::size_t k = 0; k < c.size(); ++k) {
    const auto &ch = train.channels[k];
    const auto lo = std::lower_bound(ch.begin(), ch.end(), start_us);
    const auto hi = std::lower_bound(ch.begin(), ch.end(), end_us);
    c[k] = static_cast<double>(hi - lo);
  }
  return c;
}

std::size_t collect_centers(std::span<const SpikeTrain> trains, const ElectrodeLayout &layout,
                            std::vector<Point2> &points) {
  std::size_t skipped = 0;
  for (const auto &t : trains) {
    const auto counts = channel_counts(t, t.window.start_us, t.window.end_us);
    if (std::accumulate(counts.begin(), counts.end(), 0.0) == 0.0) {
      ++skipped;
      continue;
    }
    points.push_back(center_of_activity(counts, layout));
  }
  return skipped;
}

double distance(const Point2 &a, const Point2 &b) { return std::hypot(a.x - b.x, a.y - b.y); }

Point2 centroid(std::span<const Point2> points) {
  if (points.empty()) throw std::invalid_argument("centroid of an empty point set");
  double sx = 0.0, sy = 0.0;
  for (const auto &p : points) {
    sx += p.x;
    sy += p.y;
  }
  const auto n = static_cast<double>(points.size());
  return {sx / n, sy / n};
}

SilhouetteResult silhouette(std::span<const CACluster> clusters) {
  if (clusters.size() < 2) throw std::invalid_argument("silhouette needs at least two clusters");
  for (const auto &c : clusters) {
    if (c.points.empty()) throw std::invalid_argument("silhouette clusters must be nonempty");
  }

  // Flatten to (cluster, point) pairs so the parallel loop is balanced.
  std::vector<std::pair<std::size_t, std::size_t>> index;
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    for (std::size_t i = 0; i < clusters[c].points.size(); ++i) index.emplace_back(c, i);
  }

  SilhouetteResult r;
  r.scores.resize(clusters.size());
  for (std::size_t c = 0; c < clusters.size(); ++c) r.scores[c].assign(clusters[c].points.size(), 0.0);

  const auto n = static_cast<std::ptrdiff_t>(index.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t idx = 0; idx < n; ++idx) {
    const auto [c, i] = index[static_cast<std::size_t>(idx)];
    const auto &own = clusters[c].points;
    if (own.size() < 2) continue;
    const Point2 p = own[i];
    double a = 0.0;
    for (std::size_t j = 0; j < own.size(); ++j) {
      if (j != i) a += distance(p, own[j]);
    }
    a /= static_cast<double>(own.size() - 1);
    double b = std::numeric_limits<double>::infinity();
    for (std::size_t o = 0; o < clusters.size(); ++o) {
      if (o == c) continue;
      double sum = 0.0;
      for (const auto &q : clusters[o].points) sum += distance(p, q);
      b = std::min(b, sum / static_cast<double>(clusters[o].points.size()));
    }
    const double denom = std::max(a, b);
    r.scores[c][i] = denom > 0 ? (b - a) / denom : 0.0;
  }

  for (const auto &s : r.scores) r.medians.push_back(median(s));
  return r;
}

double median(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("median of an empty set");
  const auto mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
  const double upper = values[mid];
  if (values.size() % 2 == 1) return upper;
  const double lower = *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

double centroid_shift_um(const CACluster &cluster, const Point2 &baseline, double um_per_unit) {
  if (cluster.points.empty()) throw std::invalid_argument("centroid shift of an empty cluster");
  return distance(centroid(cluster.points), baseline) * um_per_unit;
}

double global_spike_count(std::span<const SpikeTrain> trains) {
  if (trains.empty()) return 0.0;
  double sum = 0.0;
  for (const auto &t : trains) sum += static_cast<double>(t.total());
  return sum / static_cast<double>(trains.size());
}

double bootstrap_centroid_distance_se(std::span<const Point2> a, std::span<const Point2> b, int resamples,
                                      std::uint64_t seed) {
  if (a.empty() || b.empty()) throw std::invalid_argument("bootstrap needs nonempty clusters");
  if (resamples < 2) throw std::invalid_argument("bootstrap needs at least two resamples");
  Rng rng(seed);
  std::uniform_int_distribution<std::size_t> pick_a(0, a.size() - 1), pick_b(0, b.size() - 1);
  std::vector<double> d;
  d.reserve(static_cast<std::size_t>(resamples));
  for (int r = 0; r < resamples; ++r) {
    Point2 ma, mb;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const auto &p = a[pick_a(rng)];
      ma.x += p.x;
      ma.y += p.y;
    }
    for (std::size_t i = 0; i < b.size(); ++i) {
      const auto &p = b[pick_b(rng)];
      mb.x += p.x;
      mb.y += p.y;
    }
    ma = {ma.x / a.size(), ma.y / a.size()};
    mb = {mb.x / b.size(), mb.y / b.size()};
    d.push_back(distance(ma, mb));
  }
  const double mu = std::accumulate(d.begin(), d.end(), 0.0) / resamples;
  double ss = 0.0;
  for (double x : d) ss += (x - mu) * (x - mu);
  return std::sqrt(ss / (resamples - 1));
}

double radar_area(const std::array<double, 3> &r) {
  const double wedge = 0.5 * std::sin(2.0 * std::acos(-1.0) / 3.0);
  return wedge * (r[0] * r[1] + r[1] * r[2] + r[2] * r[0]);
}

RadarSummary radar_summary(const SpatialMetricTable &table) {
  const std::size_t nv = table.values.size();
  if (table.silhouette.size() != nv || table.shift_um.size() != nv || table.spike_count.size() != nv)
    throw std::invalid_argument("metric tables must share the (value, electrode) grid");
  if (nv == 0) throw std::invalid_argument("radar summary needs at least one parameter value");

  const std::array<const std::vector<std::array<double, kElectrodes>> *, 3> metrics = {
      &table.silhouette, &table.shift_um, &table.spike_count};
  RadarSummary out;
  out.values = table.values;
  out.radii.assign(nv, {});
  for (std::size_t m = 0; m < 3; ++m) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const auto &row : *metrics[m]) {
      for (double x : row) {
        lo = std::min(lo, x);
        hi = std::max(hi, x);
      }
    }
    out.degenerate[m] = !(hi > lo);
    if (out.degenerate[m]) {
      static constexpr const char *names[] = {"silhouette", "centroid shift", "spike count"};
      std::cerr << "warning: radar axis '" << names[m] << "' has max == min; using 0.5\n";
    }
    for (std::size_t v = 0; v < nv; ++v) {
      double sum = 0.0;
      for (double x : (*metrics[m])[v]) sum += out.degenerate[m] ? 0.5 : (x - lo) / (hi - lo);
      out.radii[v][m] = sum / kElectrodes;
    }
  }
  for (const auto &r : out.radii) out.area.push_back(radar_area(r));
  return out;
}

} // namespace biobraille
