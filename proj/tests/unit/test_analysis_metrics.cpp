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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

using namespace biobraille;

namespace {

CACluster cluster(std::vector<Point2> pts, int electrode = 0) {
  CACluster c;
  c.electrode = electrode;
  c.points = std::move(pts);
  return c;
}

// Pairwise oracle for one point.
double oracle_score(const std::vector<CACluster> &cs, std::size_t k, std::size_t i) {
  const auto &p = cs[k].points[i];
  if (cs[k].points.size() == 1) return 0.0;
  double a = 0;
  for (std::size_t j = 0; j < cs[k].points.size(); ++j)
    if (j != i) a += std::hypot(p.x - cs[k].points[j].x, p.y - cs[k].points[j].y);
  a /= static_cast<double>(cs[k].points.size() - 1);
  double b = INFINITY;
  for (std::size_t o = 0; o < cs.size(); ++o) {
    if (o == k) continue;
    double s = 0;
    for (const auto &q : cs[o].points) s += std::hypot(p.x - q.x, p.y - q.y);
    b = std::min(b, s / static_cast<double>(cs[o].points.size()));
  }
  return (b - a) / std::max(a, b);
}

} // namespace

TEST_SUITE("analysis_metrics") {

TEST_CASE("center of activity examples") {
  const auto grid = ElectrodeLayout::grid_2x4();
  std::vector<double> f(kElectrodes, 0.0);
  f[3] = 17;
  CHECK(center_of_activity(f, grid) == grid.coords[3]);

  std::fill(f.begin(), f.end(), 2.0);
  Point2 mean{};
  for (const auto &c : grid.coords) mean.x += c.x / kElectrodes, mean.y += c.y / kElectrodes;
  const auto c = center_of_activity(f, grid);
  CHECK(c.x == doctest::Approx(mean.x));
  CHECK(c.y == doctest::Approx(mean.y));

  ElectrodeLayout two = grid;
  two.coords[0] = {0, 0};
  two.coords[1] = {1, 0};
  std::vector<double> g = {3, 1, 0, 0, 0, 0, 0, 0};
  const auto h = center_of_activity(g, two);
  CHECK(h.x == 0.25);
  CHECK(h.y == 0.0);
}

TEST_CASE("center of activity is scale invariant and undefined at zero") {
  const auto grid = ElectrodeLayout::grid_2x4();
  std::vector<double> f = {1, 4, 0, 2, 7, 0, 3, 5};
  const auto a = center_of_activity(f, grid);
  for (auto &x : f) x *= 3.5;
  const auto b = center_of_activity(f, grid);
  CHECK(a.x == doctest::Approx(b.x).epsilon(1e-14));
  CHECK(a.y == doctest::Approx(b.y).epsilon(1e-14));
  const std::vector<double> z(kElectrodes, 0.0);
  CHECK_THROWS_AS(center_of_activity(z, grid), UndefinedCenterError);
}

TEST_CASE("window counts are half open") {
  SpikeTrain t;
  t.channels[5] = {100'000, 400'000, 500'000};
  const auto c = channel_counts(t, 0, 500'000);
  CHECK(c[5] == 2);
  CHECK(std::accumulate(c.begin(), c.end(), 0.0) == 2);
}

TEST_CASE("distant tight clusters score near one") {
  const std::vector<CACluster> cs = {cluster({{0, 0}, {0.01, 0}, {0, 0.01}}), cluster({{10, 10}, {10.01, 10}, {10, 10.01}})};
  const auto s = silhouette(cs);
  for (const auto &v : s.scores)
    for (double x : v) CHECK(x > 0.99);
}

TEST_CASE("identical overlapping clusters score near zero") {
  std::vector<Point2> pts;
  for (int i = 0; i < 20; ++i) pts.push_back({std::cos(i * 0.7), std::sin(i * 1.3)});
  const std::vector<CACluster> cs = {cluster(pts), cluster(pts)};
  const auto s = silhouette(cs);
  CHECK(std::abs(s.medians[0]) < 0.1);
  CHECK(std::abs(s.medians[1]) < 0.1);
}

TEST_CASE("hand-placed clusters match the pairwise oracle exactly") {
  const std::vector<CACluster> cs = {cluster({{0, 0}, {0.1, 0.3}, {0.2, 0.1}, {0.05, 0.2}}),
                                     cluster({{1, 1}, {1.2, 0.9}, {0.9, 1.3}, {1.1, 1.1}}),
                                     cluster({{0.5, 1.5}, {0.4, 1.2}, {0.7, 1.4}, {0.6, 1.1}})};
  const auto s = silhouette(cs);
  for (std::size_t k = 0; k < 3; ++k)
    for (std::size_t i = 0; i < 4; ++i) CHECK(s.scores[k][i] == oracle_score(cs, k, i));
}

TEST_CASE("singleton cluster scores zero") {
  const std::vector<CACluster> cs = {cluster({{0, 0}}), cluster({{1, 0}, {1, 0.1}})};
  const auto s = silhouette(cs);
  CHECK(s.scores[0] == std::vector<double>{0.0});
  CHECK(s.medians[0] == 0.0);
}

TEST_CASE("silhouette invariances") {
  std::vector<CACluster> cs = {cluster({{0, 0}, {0.3, 0.1}, {0.2, 0.4}, {0.1, 0.1}, {0.25, 0.3}}),
                               cluster({{0.6, 0.5}, {0.9, 0.7}, {0.8, 0.4}, {0.7, 0.9}})};
  const auto base = silhouette(cs);
  auto permuted = cs;
  std::reverse(permuted[0].points.begin(), permuted[0].points.end());
  const auto p = silhouette(permuted);
  CHECK(p.medians == base.medians);
  auto moved = cs;
  for (auto &c : moved)
    for (auto &q : c.points) q = {-q.y + 3.0, q.x - 1.0}; // rotation plus translation
  const auto m = silhouette(moved);
  for (std::size_t k = 0; k < 2; ++k) CHECK(m.medians[k] == doctest::Approx(base.medians[k]).epsilon(1e-12));
  const std::vector<CACluster> with_empty = {cs[0], CACluster{}};
  CHECK_THROWS(silhouette(with_empty));
}

TEST_CASE("median") {
  CHECK(median({3, 1, 2}) == 2);
  CHECK(median({4, 1, 3, 2}) == 2.5);
  CHECK_THROWS(median({}));
}

TEST_CASE("centroid shift") {
  CHECK(centroid_shift_um(cluster({{0.2, 0.3}, {0.4, 0.5}}), {0.3, 0.4}, 100) == doctest::Approx(0.0));
  CHECK(centroid_shift_um(cluster({{0.1, 0.0}, {0.1, 0.0}}), {0, 0}, 100) == doctest::Approx(10.0));
  const auto c = cluster({{0.3, 0.7}, {0.5, 0.2}, {0.1, 0.4}});
  auto t = c;
  for (auto &q : t.points) q.x += 0.25, q.y -= 0.5;
  CHECK(centroid_shift_um(t, {0.25, -0.5}, 100) == doctest::Approx(centroid_shift_um(c, {0, 0}, 100)));
  CHECK_THROWS(centroid_shift_um(CACluster{}, {0, 0}, 100));
}

TEST_CASE("global spike count") {
  std::vector<SpikeTrain> trains(2);
  CHECK(global_spike_count(trains) == 0.0);
  SpikeTrain one;
  for (int k = 0; k < kElectrodes; ++k) one.channels[k].assign(static_cast<std::size_t>(k + 1), 1000);
  CHECK(global_spike_count(std::vector<SpikeTrain>{one}) == 36.0);
}

TEST_CASE("radar area and normalisation") {
  CHECK(radar_area({1, 1, 1}) == doctest::Approx(3 * std::sqrt(3.0) / 4));
  CHECK(radar_area({0, 1, 1}) == doctest::Approx(std::sqrt(3.0) / 4));

  SpatialMetricTable t;
  t.values = {1, 2, 3};
  for (int v = 0; v < 3; ++v) {
    std::array<double, kElectrodes> sil{}, shift{}, count{};
    sil.fill(0.1 * (v + 1));
    shift.fill(5.0);
    count.fill(10.0 * (v + 1));
    t.silhouette.push_back(sil);
    t.shift_um.push_back(shift);
    t.spike_count.push_back(count);
  }
  const auto r = radar_summary(t);
  CHECK_FALSE(r.degenerate[0]);
  CHECK(r.degenerate[1]);
  CHECK(r.radii[2][0] == doctest::Approx(1.0));
  CHECK(r.radii[0][0] == doctest::Approx(0.0));
  CHECK(r.radii[1][1] == 0.5);
  CHECK(r.radii[2][2] == doctest::Approx(1.0));
}

TEST_CASE("bootstrap standard error shrinks with cluster size") {
  std::vector<Point2> a, b, big_a, big_b;
  for (int i = 0; i < 200; ++i) {
    const Point2 p{std::sin(i * 12.9898) * 0.1, std::cos(i * 78.233) * 0.1};
    big_a.push_back(p);
    big_b.push_back({p.y + 1.0, p.x});
    if (i < 20) a.push_back(p), b.push_back({p.y + 1.0, p.x});
  }
  const double small = bootstrap_centroid_distance_se(a, b, 500, 1);
  const double large = bootstrap_centroid_distance_se(big_a, big_b, 500, 1);
  CHECK(small > large);
  CHECK(large > 0);
  CHECK(bootstrap_centroid_distance_se(a, b, 500, 1) == small);
}

TEST_CASE("spatial run on a model") {
  const auto m = build_organoid(21);
  SpatialSpec s;
  s.values = {2, 6};
  s.trials = 40;
  s.baseline_windows = 100;
  s.seed = 9;
  const auto r = run_spatial(m, s);
  REQUIRE(r.clusters.size() == 2);
  REQUIRE(r.clusters[0].size() == kElectrodes);
  CHECK(r.table.values == s.values);
  for (std::size_t v = 0; v < 2; ++v)
    for (int e = 0; e < kElectrodes; ++e) {
      CHECK(r.clusters[v][e].electrode == e);
      CHECK(r.table.spike_count[v][e] > 0);
    }
  // Coupling is not distance structured, so clouds need not follow the
  // layout; they must still separate, more so with more pulses.
  double mean2 = 0, mean6 = 0;
  for (int e = 0; e < kElectrodes; ++e) mean2 += r.table.silhouette[0][e] / kElectrodes, mean6 += r.table.silhouette[1][e] / kElectrodes;
  CHECK(mean2 > 0);
  CHECK(mean6 > mean2);
}

}
