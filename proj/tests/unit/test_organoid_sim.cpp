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


#include <biobraille/organoid_sim.hpp>
#include <biobraille/rng.hpp>

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace biobraille;

namespace {

double mean_total(const OrganoidModel &m, const StimPattern &p, int trials, std::uint64_t seed) {
  double sum = 0;
  for (int t = 0; t < trials; ++t) sum += static_cast<double>(stimulate(m, p, {0, 500'000}, derive_seed(seed, {(std::uint64_t)t})).total());
  return sum / trials;
}

} // namespace

TEST_SUITE("organoid_sim") {

TEST_CASE("model construction is seeded") {
  CHECK(build_organoid(5) == build_organoid(5));
  const auto a = build_organoid(1), b = build_organoid(2);
  double frob = 0;
  for (int j = 0; j < kElectrodes; ++j)
    for (int k = 0; k < kElectrodes; ++k) frob += std::pow(a.coupling[j][k] - b.coupling[j][k], 2);
  CHECK(frob > 0);
}

TEST_CASE("diagonal coupling dominates each row at seed 0") {
  const auto m = build_organoid(0);
  for (int j = 0; j < kElectrodes; ++j) {
    double off = 0;
    for (int k = 0; k < kElectrodes; ++k)
      if (k != j) off = std::max(off, m.coupling[j][k]);
    CHECK(m.coupling[j][j] > off);
  }
}

TEST_CASE("amplitude gain has a threshold and saturates") {
  const OrganoidParams p;
  CHECK(amplitude_gain(p, 0.0) == 0.0);
  CHECK(amplitude_gain(p, 2.0) == 0.0);
  CHECK(amplitude_gain(p, 3.99) == 0.0);
  CHECK(amplitude_gain(p, 4.0) > 0.0);
  CHECK(amplitude_gain(p, 12.0) == doctest::Approx(0.9).epsilon(0.02));
  for (double a = 4.0; a < 20.0; a += 0.5) CHECK(amplitude_gain(p, a + 0.5) >= amplitude_gain(p, a));
  CHECK(amplitude_gain(p, 20.0) - amplitude_gain(p, 12.0) < 0.1);
}

TEST_CASE("duration gain grows over 50 to 300 us") {
  const auto m = build_organoid(3);
  for (int e = 0; e < kElectrodes; ++e)
    for (double d = 50; d < 300; d += 50) CHECK(duration_gain(m, e, d + 50) > duration_gain(m, e, d));
}

TEST_CASE("below-threshold amplitude evokes nothing") {
  const auto m = build_organoid(4);
  const auto rates = evoked_rates(m, StimPattern::uniform({10, 2.0, 300.0, 0.0}));
  for (double r : rates) CHECK(r == 0.0);
}

TEST_CASE("unstimulated trials carry the baseline rate") {
  const auto m = build_organoid(6);
  const double expected = kElectrodes * m.params.baseline_rate_hz * 0.5;
  const int trials = 2000;
  const double got = mean_total(m, StimPattern{}, trials, 99);
  CHECK(std::abs(got - expected) < 5 * std::sqrt(expected / trials));
  const double sub = mean_total(m, StimPattern::uniform({10, 2.0, 300.0, 0.0}), trials, 99);
  CHECK(sub == got); // same seeds, no evoked component
}

TEST_CASE("spike trains are ordered, in window and seeded") {
  const auto m = build_organoid(8);
  const auto p = StimPattern::uniform({6, 12.0, 200.0, 1000.0});
  const auto a = stimulate(m, p, {0, 500'000}, 123);
  CHECK(a == stimulate(m, p, {0, 500'000}, 123));
  CHECK(a.total() > 0);
  for (const auto &ch : a.channels) {
    CHECK(std::is_sorted(ch.begin(), ch.end()));
    for (auto t : ch) CHECK((t >= 0 && t < 500'000));
    for (std::size_t i = 1; i < ch.size(); ++i) CHECK(ch[i] - ch[i - 1] >= 1000); // refractory floor
  }
}

TEST_CASE("out-of-range patterns are rejected") {
  const auto m = build_organoid(1);
  CHECK_THROWS_AS(stimulate(m, StimPattern::uniform({5, 25.0, 100.0, 0.0}), {0, 500'000}, 1), std::invalid_argument);
  CHECK_THROWS_AS(stimulate(m, StimPattern::uniform({12, 5.0, 100.0, 0.0}), {0, 500'000}, 1), std::invalid_argument);
}

TEST_CASE("model validation") {
  auto m = build_organoid(2);
  CHECK_NOTHROW(m.validate());
  m.coupling[1][2] = -0.1;
  CHECK_THROWS(m.validate());
  OrganoidParams p;
  p.baseline_rate_hz = -1;
  CHECK_THROWS(p.validate());
}

TEST_CASE("pulse sweep is near linear and starts at baseline") {
  const auto m = build_organoid(11);
  SweepSpec s;
  s.param = StimParam::pulses;
  for (int v = 0; v <= 10; ++v) s.values.push_back(v);
  s.trials = 100;
  s.seed = 5;
  const auto t = run_sweep(m, s);
  REQUIRE(t.mean_total.size() == 11);
  REQUIRE(t.mean.size() == 11);
  const double base = kElectrodes * m.params.baseline_rate_hz * 0.2;
  CHECK(t.mean_total[0] == doctest::Approx(base).epsilon(0.3));
  double sx = 0, sy = 0, sxy = 0, sxx = 0, syy = 0;
  for (int v = 1; v <= 10; ++v) {
    const double y = t.mean_total[static_cast<std::size_t>(v)];
    sx += v, sy += y, sxy += v * y, sxx += v * v, syy += y * y;
  }
  const double n = 10;
  const double r = (n * sxy - sx * sy) / std::sqrt((n * sxx - sx * sx) * (n * syy - sy * sy));
  CHECK(r >= 0.95);
}

TEST_CASE("trigger delay does not change counts") {
  const auto m = build_organoid(12);
  SweepSpec s;
  s.param = StimParam::delay;
  for (int d = 0; d <= 4000; d += 500) s.values.push_back(d);
  s.seed = 8;
  const auto t = run_sweep(m, s);
  const auto [lo, hi] = std::minmax_element(t.mean_total.begin(), t.mean_total.end());
  CHECK(*hi - *lo <= 0.1 * *lo);
}

TEST_CASE("amplitude sweep is flat to 2 uA then rises") {
  const auto m = build_organoid(13);
  SweepSpec s;
  s.param = StimParam::amplitude;
  s.values = {0, 2, 4, 8, 12, 20};
  s.seed = 2;
  const auto t = run_sweep(m, s);
  CHECK(t.mean_total[1] == t.mean_total[0]);
  CHECK(t.mean_total[3] > t.mean_total[0]);
  CHECK(t.mean_total[4] > t.mean_total[2]);
}

TEST_CASE("no stimulation gives a flat PSTH") {
  const auto m = build_organoid(14);
  PsthSpec spec;
  spec.trials = 400;
  spec.seed = 3;
  const auto h = psth(m, StimPattern{}, spec);
  REQUIRE(h.bin_start_us.size() == 12);
  CHECK(h.bin_start_us.front() == -100'000);
  const double expected = kElectrodes * m.params.baseline_rate_hz * 0.05;
  const double se = std::sqrt(expected / spec.trials);
  for (double c : h.mean_count) CHECK(std::abs(c - expected) < 5 * se);
}

TEST_CASE("PSTH elevation follows the pulse count") {
  const auto m = build_organoid(15);
  PsthSpec spec;
  spec.seed = 4;
  const auto one = psth(m, StimPattern::uniform({1, 4.0, 100.0, 0.0}), spec);
  const auto ten = psth(m, StimPattern::uniform({10, 4.0, 100.0, 0.0}), spec);
  const double pre1 = one.pre_stimulus_mean(), pre10 = ten.pre_stimulus_mean();
  // bins: -100, -50, 0, 50, 100, ...
  CHECK(one.mean_count[2] > 3 * pre1);
  CHECK(one.mean_count[3] <= 2 * pre1);
  CHECK(ten.mean_count[2] > 3 * pre10);
  CHECK(ten.mean_count[3] > 3 * pre10);
  for (std::size_t i = 5; i < ten.mean_count.size(); ++i) CHECK(ten.mean_count[i] <= 2 * pre10);
}

TEST_CASE("parameter names round trip") {
  for (auto p : {StimParam::pulses, StimParam::amplitude, StimParam::duration, StimParam::delay})
    CHECK(parse_stim_param(to_string(p)) == p);
  CHECK_THROWS(parse_stim_param("frequency"));
  CHECK(with_param(kSweepDefaults, StimParam::amplitude, 9.0).phase_amplitude_uA == 9.0);
}

TEST_CASE("drive is nondecreasing in pulses and amplitude") {
  const auto m = build_organoid(16);
  for (int e = 0; e < kElectrodes; ++e) {
    std::array<double, kElectrodes> prev{};
    for (int n = 0; n <= 10; ++n) {
      const auto r = evoked_rates(m, StimPattern::single(e, {n, 10.0, 150.0, 0.0}));
      for (int k = 0; k < kElectrodes; ++k) CHECK(r[k] >= prev[k]);
      prev = r;
    }
    prev = {};
    for (double a = 0; a <= 20; a += 1) {
      const auto r = evoked_rates(m, StimPattern::single(e, {5, a, 150.0, 0.0}));
      for (int k = 0; k < kElectrodes; ++k) CHECK(r[k] >= prev[k]);
      prev = r;
    }
  }
}

}
