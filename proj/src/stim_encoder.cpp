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


#include <biobraille/stim_encoder.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace biobraille {

namespace {

// Divides by the reciprocal so that e.g. 126 tenths comes out as exactly 12.6.
double round_to(double v, double step) { return std::round(v / step) / (1.0 / step); }

void check_interval(const Interval &r, const char *name) {
  if (!(r.lo < r.hi)) throw std::invalid_argument(std::string("encoder range ") + name + " needs lo < hi");
}

} // namespace

StimPattern StimPattern::uniform(const ElectrodeStim &stim) {
  StimPattern p;
  p.electrodes.fill(stim);
  return p;
}

StimPattern StimPattern::single(int electrode, const ElectrodeStim &stim) {
  if (electrode < 0 || electrode >= kElectrodes) throw std::invalid_argument("electrode index out of range");
  StimPattern p;
  p.electrodes[static_cast<std::size_t>(electrode)] = stim;
  return p;
}

void validate_platform(const StimPattern &pattern, const PlatformLimits &limits) {
  for (int e = 0; e < kElectrodes; ++e) {
    const auto &s = pattern.electrodes[static_cast<std::size_t>(e)];
    const std::string where = "electrode " + std::to_string(e) + ": ";
    if (s.num_pulses < 0 || s.num_pulses > limits.max_pulses)
      throw std::invalid_argument(where + "num_pulses " + std::to_string(s.num_pulses) + " outside 0.." +
                                  std::to_string(limits.max_pulses));
    if (!(s.phase_amplitude_uA >= 0 && s.phase_amplitude_uA <= limits.max_amplitude_uA))
      throw std::invalid_argument(where + "phase amplitude " + std::to_string(s.phase_amplitude_uA) +
                                  " uA outside platform range");
    if (!(s.phase_duration_us >= 0 && s.phase_duration_us <= limits.max_duration_us))
      throw std::invalid_argument(where + "phase duration " + std::to_string(s.phase_duration_us) +
                                  " us outside platform range");
    if (!(s.trigger_delay_us >= 0 && s.trigger_delay_us <= limits.max_delay_us))
      throw std::invalid_argument(where + "trigger delay " + std::to_string(s.trigger_delay_us) +
                                  " us outside platform range");
  }
}

void EncoderRanges::validate() const {
  check_interval(pulses, "pulses");
  check_interval(duration_us, "duration_us");
  check_interval(delay_us, "delay_us");
  check_interval(amplitude_uA, "amplitude_uA");
  const PlatformLimits lim;
  if (pulses.lo < 0 || pulses.hi > lim.max_pulses) throw std::invalid_argument("pulse range exceeds 0..10");
  if (amplitude_uA.lo < 0 || amplitude_uA.hi > lim.max_amplitude_uA)
    throw std::invalid_argument("amplitude range exceeds 20 uA encoding range");
  if (duration_us.lo < 0 || duration_us.hi > lim.max_duration_us)
    throw std::invalid_argument("duration range exceeds 300 us");
  if (delay_us.lo < 0 || delay_us.hi > lim.max_delay_us) throw std::invalid_argument("delay range exceeds 4000 us");
}

EncoderCalibration calibrate(std::span<const RegionFeatureSet> features, const EncoderRanges &targets) {
  targets.validate();
  if (features.empty()) throw std::invalid_argument("cannot calibrate on an empty dataset");
  constexpr double inf = std::numeric_limits<double>::infinity();
  Interval count{inf, -inf}, duration{inf, -inf}, peak{inf, -inf}, deviation{inf, -inf};
  auto widen = [](Interval &r, double v) {
    r.lo = std::min(r.lo, v);
    r.hi = std::max(r.hi, v);
  };
  bool any = false;
  for (const auto &set : features) {
    for (const auto &f : set.regions) {
      any = true;
      widen(count, static_cast<double>(f.event_count));
      widen(duration, static_cast<double>(f.event_duration_us));
      widen(peak, static_cast<double>(f.peak_time_us));
      widen(deviation, f.event_deviation);
    }
  }
  if (!any) throw std::invalid_argument("cannot calibrate: feature sets contain no regions");
  return {count, duration, peak, deviation, targets};
}

double map_linear(double value, const Interval &source, const Interval &target) {
  if (source.degenerate()) return target.mid();
  const double u = std::clamp((value - source.lo) / (source.hi - source.lo), 0.0, 1.0);
  return std::clamp(target.lo + u * (target.hi - target.lo), target.lo, target.hi);
}

StimPattern encode(const RegionFeatureSet &features, const EncoderCalibration &cal) {
  if (features.regions.size() != static_cast<std::size_t>(kElectrodes))
    throw std::invalid_argument("encoder needs exactly 8 regions, got " + std::to_string(features.regions.size()));
  const auto &tg = cal.targets;
  StimPattern p;
  for (std::size_t r = 0; r < features.regions.size(); ++r) {
    const auto &f = features.regions[r];
    auto &e = p.electrodes[r];
    if (f.event_count == 0) {
      e = {static_cast<int>(tg.pulses.lo), tg.amplitude_uA.lo, tg.duration_us.lo, tg.delay_us.lo};
      continue;
    }
    const double pulses = map_linear(static_cast<double>(f.event_count), cal.event_count, tg.pulses);
    e.num_pulses = static_cast<int>(std::lround(pulses));
    e.phase_duration_us =
        std::clamp(std::round(map_linear(static_cast<double>(f.event_duration_us), cal.event_duration_us, tg.duration_us)),
                   tg.duration_us.lo, tg.duration_us.hi);
    e.trigger_delay_us = std::clamp(
        std::round(map_linear(static_cast<double>(f.peak_time_us), cal.peak_time_us, tg.delay_us)), tg.delay_us.lo,
        tg.delay_us.hi);
    e.phase_amplitude_uA = std::clamp(round_to(map_linear(f.event_deviation, cal.event_deviation, tg.amplitude_uA), 0.1),
                                      tg.amplitude_uA.lo, tg.amplitude_uA.hi);
  }
  return p;
}

std::vector<StimPattern> encode_batch(std::span<const RegionFeatureSet> features, const EncoderCalibration &cal) {
  std::vector<StimPattern> out;
  out.reserve(features.size());
  for (const auto &f : features) out.push_back(encode(f, cal));
  return out;
}

} // namespace biobraille
