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
#include <biobraille/stim_encoder.hpp>

#include <doctest.h>

#include <string>

using namespace biobraille;

namespace {

RegionFeatureSet uniform_set(const RegionFeatures &f) {
  RegionFeatureSet s;
  s.regions.assign(kElectrodes, f);
  return s;
}

EncoderCalibration sample_calibration() {
  std::vector<RegionFeatureSet> sets = {uniform_set({0, 0, 0, 0.0}), uniform_set({812, 1'800'000, 1'950'000, 12.5})};
  sets[0].regions[3] = {40, 20'000, 650'000, 2.0};
  return calibrate(sets);
}

} // namespace

TEST_SUITE("stim_encoder") {

TEST_CASE("calibration spans the dataset extremes") {
  const auto cal = sample_calibration();
  CHECK(cal.event_count == Interval{0, 812});
  CHECK(cal.event_duration_us == Interval{0, 1'800'000});
  CHECK(cal.peak_time_us == Interval{0, 1'950'000});
  CHECK(cal.event_deviation == Interval{0, 12.5});
  CHECK(cal.targets == EncoderRanges{});
}

TEST_CASE("single-trial calibration uses that trial's extremes") {
  RegionFeatureSet s = uniform_set({5, 100, 200, 1.0});
  s.regions[7] = {9, 300, 400, 3.0};
  const std::vector<RegionFeatureSet> one = {s};
  const auto cal = calibrate(one);
  CHECK(cal.event_count == Interval{5, 9});
  CHECK(cal.event_deviation == Interval{1.0, 3.0});
}

TEST_CASE("equal deviations are degenerate") {
  const std::vector<RegionFeatureSet> sets = {uniform_set({1, 0, 0, 2.0}), uniform_set({3, 0, 0, 2.0})};
  const auto cal = calibrate(sets);
  CHECK(cal.event_deviation.degenerate());
  CHECK_FALSE(cal.event_count.degenerate());
  const auto p = encode(sets[1], cal);
  CHECK(p.electrodes[0].phase_amplitude_uA == doctest::Approx(12.0)); // midpoint of 4..20
}

TEST_CASE("empty dataset is rejected") {
  const std::vector<RegionFeatureSet> none;
  CHECK_THROWS_AS(calibrate(none), std::invalid_argument);
}

TEST_CASE("count extremes and midpoint map to pulses") {
  const auto cal = sample_calibration();
  RegionFeatureSet s = uniform_set({812, 1'800'000, 1'950'000, 12.5});
  s.regions[1].event_count = 406;
  s.regions[2].event_count = 1000; // beyond the calibration range
  const auto p = encode(s, cal);
  CHECK(p.electrodes[0].num_pulses == 10);
  CHECK(p.electrodes[1].num_pulses == 7);
  CHECK(p.electrodes[2].num_pulses == 10);
  CHECK(p.electrodes[0].phase_duration_us == doctest::Approx(300));
  CHECK(p.electrodes[0].trigger_delay_us == doctest::Approx(4000));
  CHECK(p.electrodes[0].phase_amplitude_uA == doctest::Approx(20));
}

TEST_CASE("zero-event region maps to the lower endpoints") {
  const auto cal = sample_calibration();
  RegionFeatureSet s = uniform_set({812, 1'800'000, 1'950'000, 12.5});
  s.regions[5] = RegionFeatures{};
  const auto e = encode(s, cal).electrodes[5];
  CHECK(e == ElectrodeStim{4, 4.0, 50.0, 0.0});
}

TEST_CASE("linear map clamps to the target") {
  CHECK(map_linear(5, {0, 10}, {4, 20}) == doctest::Approx(12));
  CHECK(map_linear(-3, {0, 10}, {4, 20}) == 4);
  CHECK(map_linear(30, {0, 10}, {4, 20}) == 20);
  CHECK(map_linear(7, {7, 7}, {4, 20}) == 12);
}

TEST_CASE("encoded patterns respect the platform limits") {
  const auto cal = sample_calibration();
  RegionFeatureSet s = uniform_set({300, 700'000, 900'000, 4.4});
  const auto p = encode(s, cal);
  CHECK_NOTHROW(validate_platform(p));
  const std::vector<RegionFeatureSet> many(4, s);
  const auto batch = encode_batch(many, cal);
  REQUIRE(batch.size() == 4);
  for (const auto &b : batch) CHECK(b == p);
}

TEST_CASE("platform violations name electrode and field") {
  StimPattern p = StimPattern::uniform({5, 10.0, 100.0, 0.0});
  p.electrodes[2].phase_amplitude_uA = 25.0;
  try {
    validate_platform(p);
    FAIL("expected rejection");
  } catch (const std::invalid_argument &e) {
    const std::string msg = e.what();
    CHECK(msg.find("2") != std::string::npos);
    CHECK(msg.find("amplitude") != std::string::npos);
  }
  p = StimPattern::uniform({11, 10.0, 100.0, 0.0});
  CHECK_THROWS_AS(validate_platform(p), std::invalid_argument);
  p = StimPattern::uniform({1, 10.0, 301.0, 0.0});
  CHECK_THROWS_AS(validate_platform(p), std::invalid_argument);
  p = StimPattern::uniform({1, 10.0, 100.0, 4001.0});
  CHECK_THROWS_AS(validate_platform(p), std::invalid_argument);
  CHECK_NOTHROW(validate_platform(StimPattern{}));
}

TEST_CASE("single-electrode patterns") {
  const auto p = StimPattern::single(6, {3, 8.0, 100.0, 0.0});
  for (int k = 0; k < kElectrodes; ++k) CHECK(p.electrodes[k].active() == (k == 6));
}

TEST_CASE("ranges validate") {
  EncoderRanges r;
  CHECK_NOTHROW(r.validate());
  r.amplitude_uA.hi = 25;
  CHECK_THROWS(r.validate());
  r = EncoderRanges{};
  r.pulses = {8, 4};
  CHECK_THROWS(r.validate());
}

TEST_CASE("raising one feature never lowers its parameter") {
  const auto cal = sample_calibration();
  StimPattern prev = encode(uniform_set({0, 0, 0, 0.0}), cal);
  for (int step = 1; step <= 40; ++step) {
    const double f = step / 40.0;
    const auto p = encode(uniform_set({static_cast<std::int64_t>(812 * f), static_cast<std::int64_t>(1.8e6 * f),
                                       static_cast<std::int64_t>(1.95e6 * f), 12.5 * f}),
                          cal);
    CHECK(p.electrodes[0].num_pulses >= prev.electrodes[0].num_pulses);
    CHECK(p.electrodes[0].phase_duration_us >= prev.electrodes[0].phase_duration_us);
    CHECK(p.electrodes[0].trigger_delay_us >= prev.electrodes[0].trigger_delay_us);
    CHECK(p.electrodes[0].phase_amplitude_uA >= prev.electrodes[0].phase_amplitude_uA);
    prev = p;
  }
}

}
