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


#include <biobraille/noise_harness.hpp>
#include <biobraille/rng.hpp>

#include <doctest.h>

#include <cmath>
#include <cstring>

using namespace biobraille;

namespace {

std::vector<ResponseVector> counts_dataset(std::size_t n, std::size_t dim, std::uint64_t seed) {
  Rng rng(seed);
  std::uniform_int_distribution<int> c(1, 30);
  std::vector<ResponseVector> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i].label = {static_cast<char>('A' + i % 26), 0.0, static_cast<int>(i / 26)};
    for (std::size_t k = 0; k < dim; ++k) out[i].counts.push_back(c(rng));
  }
  return out;
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

} // namespace

TEST_SUITE("noise_harness") {

TEST_CASE("missing zeroes forty percent of a ten-sample channel") {
  const auto data = counts_dataset(10, 8, 1);
  NoiseSpec spec;
  spec.kind = NoiseKind::missing;
  spec.seed = 3;
  const auto out = apply_noise(data, spec);
  REQUIRE(out.channels.size() == 4);
  for (int ch : out.channels) {
    int zeros = 0;
    for (const auto &v : out.data) zeros += v.counts[static_cast<std::size_t>(ch)] == 0.0;
    CHECK(zeros == 4);
  }
}

TEST_CASE("outliers triple the hit samples") {
  std::vector<ResponseVector> data(10);
  for (auto &v : data) v.counts.assign(8, 5.0);
  NoiseSpec spec;
  spec.kind = NoiseKind::outliers;
  spec.seed = 8;
  const auto out = apply_noise(data, spec);
  for (int ch : out.channels) {
    int hits = 0;
    for (const auto &v : out.data) {
      const double x = v.counts[static_cast<std::size_t>(ch)];
      CHECK((x == 5.0 || x == 15.0));
      hits += x == 15.0;
    }
    CHECK(hits == 4);
  }
}

TEST_CASE("gaussian noise leaves a constant channel alone") {
  auto data = counts_dataset(50, 8, 2);
  for (auto &v : data)
    for (auto &x : v.counts) x = 7.0;
  NoiseSpec spec;
  spec.kind = NoiseKind::gaussian;
  const auto out = apply_noise(data, spec);
  for (std::size_t i = 0; i < data.size(); ++i) CHECK(out.data[i].counts == data[i].counts);
}

TEST_CASE("channel record, untouched channels and determinism") {
  const auto data = counts_dataset(200, 24, 4);
  for (auto kind : kAllNoiseKinds) {
    NoiseSpec spec;
    spec.kind = kind;
    spec.seed = 1234;
    const auto out = apply_noise(data, spec);
    CHECK(out.channels == draw_noise_channels(24, 4, spec.seed));
    std::vector<bool> hit(24, false);
    for (int c : out.channels) hit[static_cast<std::size_t>(c)] = true;
    for (std::size_t i = 0; i < data.size(); ++i) {
      CHECK(out.data[i].label == data[i].label);
      for (std::size_t k = 0; k < 24; ++k) {
        if (!hit[k]) CHECK(same_bits(out.data[i].counts[k], data[i].counts[k]));
        CHECK(out.data[i].counts[k] >= 0.0);
      }
    }
    CHECK(apply_noise(data, spec).data == out.data);
  }
}

TEST_CASE("zero intensity leaves data unchanged") {
  const auto data = counts_dataset(60, 8, 5);
  for (auto kind : kAllNoiseKinds) {
    NoiseSpec spec;
    spec.kind = kind;
    spec.fraction = 0.0;
    spec.scale = 0.0;
    CHECK(apply_noise(data, spec).data == data);
  }
}

TEST_CASE("invalid specs are rejected") {
  const auto data = counts_dataset(10, 8, 6);
  NoiseSpec spec;
  spec.channel_count = 9;
  CHECK_THROWS_AS(apply_noise(data, spec), std::invalid_argument);
  spec = NoiseSpec{};
  spec.fraction = 1.5;
  CHECK_THROWS_AS(apply_noise(data, spec), std::invalid_argument);
  const std::vector<ResponseVector> none;
  CHECK_THROWS_AS(apply_noise(none, NoiseSpec{}), std::invalid_argument);
  CHECK_THROWS(parse_noise_kind("pink"));
  for (auto k : kAllNoiseKinds) CHECK(parse_noise_kind(to_string(k)) == k);
  CHECK(parse_noise_placement("test") == NoisePlacement::test);
}

TEST_CASE("robustness report with zero intensity shows no degradation") {
  // Three letters, five depths, ten trials; letter encoded on channel 0.
  std::vector<std::vector<ResponseVector>> singles(2);
  Rng rng(9);
  std::normal_distribution<double> g(0, 1);
  for (char c = 'A'; c <= 'C'; ++c)
    for (double d : kDepthsMm)
      for (int t = 0; t < 10; ++t)
        for (auto &s : singles) {
          ResponseVector v{{c, d, t}, {}};
          for (int k = 0; k < 8; ++k) v.counts.push_back(std::abs(g(rng)) + (k == 0 ? 4.0 * (c - 'A') : 0.0));
          s.push_back(v);
        }
  const auto ensemble = concatenate(singles);
  RobustnessOptions o;
  o.cv.seed = 1;
  o.repeats = 2;
  o.seed = 3;
  o.noise.fraction = 0.0;
  o.noise.scale = 0.0;
  const auto rep = robustness_report(singles, ensemble, o);
  CHECK(rep.rows.size() == 4 * 3);
  for (const auto &r : rep.rows) {
    CHECK(r.degradation() == 0.0);
    CHECK(r.repeats == 2);
  }
  o.placement = NoisePlacement::test;
  o.noise = NoiseSpec{};
  const auto noisy = robustness_report(singles, ensemble, o);
  for (const auto &r : noisy.rows) CHECK(r.noised_accuracy <= 1.0);
}

}
