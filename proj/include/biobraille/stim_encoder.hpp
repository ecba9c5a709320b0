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

#include <biobraille/region_features.hpp>

#include <array>
#include <span>

namespace biobraille {

inline constexpr int kElectrodes = 8;

/// Inter-pulse spacing inside a train (250 Hz).
inline constexpr double kPulseIntervalUs = 4000.0;

/// One electrode's biphasic train. The waveform is always positive phase
/// first with equal amplitude and duration in both phases, so one amplitude
/// and one duration describe it.
struct ElectrodeStim {
  int num_pulses = 0;
  double phase_amplitude_uA = 0.0;
  double phase_duration_us = 0.0;
  double trigger_delay_us = 0.0;

  bool active() const { return num_pulses > 0 && phase_amplitude_uA > 0.0 && phase_duration_us > 0.0; }

  friend bool operator==(const ElectrodeStim &, const ElectrodeStim &) = default;
};

struct StimPattern {
  std::array<ElectrodeStim, kElectrodes> electrodes{};

  /// Same train on every electrode.
  static StimPattern uniform(const ElectrodeStim &stim);
  /// Train on one electrode, the rest silent.
  static StimPattern single(int electrode, const ElectrodeStim &stim);

  friend bool operator==(const StimPattern &, const StimPattern &) = default;
};

/// Hardware limits accepted by the simulator (0 means "off").
struct PlatformLimits {
  int max_pulses = 10;
  double max_amplitude_uA = 20.0;
  double max_duration_us = 300.0;
  double max_delay_us = 4000.0;
};

/// Throws std::invalid_argument naming the electrode and field out of range.
void validate_platform(const StimPattern &pattern, const PlatformLimits &limits = {});

struct Interval {
  double lo = 0.0;
  double hi = 1.0;

  double mid() const { return 0.5 * (lo + hi); }
  bool degenerate() const { return !(lo < hi); }
  friend bool operator==(const Interval &, const Interval &) = default;
};

/// Target parameter ranges shared by all electrodes.
struct EncoderRanges {
  Interval pulses{4, 10};
  Interval duration_us{50, 300};
  Interval delay_us{0, 4000};
  Interval amplitude_uA{4, 20};

  void validate() const;
  friend bool operator==(const EncoderRanges &, const EncoderRanges &) = default;
};

/// Source ranges used to normalise each feature before mapping. A feature
/// with lo == hi is degenerate and maps to the midpoint of its target range.
struct EncoderCalibration {
  Interval event_count;
  Interval event_duration_us;
  Interval peak_time_us;
  Interval event_deviation;
  EncoderRanges targets;

  friend bool operator==(const EncoderCalibration &, const EncoderCalibration &) = default;
};

/// Global [min, max] of each feature over every region of every trial.
EncoderCalibration calibrate(std::span<const RegionFeatureSet> features, const EncoderRanges &targets = {});

/// Linear map of value from `source` onto `target`, clamped to `target`.
double map_linear(double value, const Interval &source, const Interval &target);

/// count -> pulses, duration -> phase duration, peak time -> trigger delay,
/// deviation -> phase amplitude. Region r drives electrode r.
StimPattern encode(const RegionFeatureSet &features, const EncoderCalibration &cal);

std::vector<StimPattern> encode_batch(std::span<const RegionFeatureSet> features, const EncoderCalibration &cal);

} // namespace biobraille
