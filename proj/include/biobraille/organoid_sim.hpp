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

#include <biobraille/stim_encoder.hpp>

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace biobraille {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2 &, const Point2 &) = default;
};

/// Electrode positions normalised to [0, 1]^2 plus the physical scale used
/// when reporting distances.
struct ElectrodeLayout {
  std::array<Point2, kElectrodes> coords{};
  double um_per_unit = 100.0;

  /// 2 x 4 grid, row-major, matching the region grid.
  static ElectrodeLayout grid_2x4();
  void validate() const;

  friend bool operator==(const ElectrodeLayout &, const ElectrodeLayout &) = default;
};

/// Knobs used when drawing an organoid from a seed. Everything that is not
/// per-electrode randomness lives here and is copied into the model.
struct OrganoidParams {
  // coupling: diagonal ~ U(diag_lo, diag_hi), off-diagonal ~ offdiag_max * U(0,1)^offdiag_power
  double diag_lo = 0.7;
  double diag_hi = 1.3;
  double offdiag_max = 0.45;
  double offdiag_power = 2.0;

  double pulse_gain = 6.0; // expected spikes per pulse per unit coupling at full drive
  double amplitude_threshold_uA = 4.0;
  double amplitude_saturation_uA = 12.0; // 90 % of the rise reached here
  double amplitude_floor = 0.1;          // gain right at threshold

  double duration_ref_us = 100.0;
  double duration_exponent_lo = 0.4; // per stimulating electrode, uniform
  double duration_exponent_hi = 1.0;

  double baseline_rate_hz = 0.5;

  double primary_tau_ms = 10.0;
  double secondary_latency_ms = 60.0;
  double secondary_width_ms = 15.0;
  double secondary_weight_max = 0.55;
  int secondary_onset_pulses = 3; // weight is zero up to this many pulses
  double refractory_us = 1000.0;

  void validate() const;
  friend bool operator==(const OrganoidParams &, const OrganoidParams &) = default;
};

using CouplingMatrix = std::array<std::array<double, kElectrodes>, kElectrodes>;

/// Immutable stochastic stand-in for one organoid on an 8-electrode MEA.
/// coupling[k][j] is the drive gain from stimulating electrode j to
/// recording channel k.
struct OrganoidModel {
  std::uint64_t seed = 0;
  OrganoidParams params;
  CouplingMatrix coupling{};
  std::array<double, kElectrodes> duration_exponent{};
  ElectrodeLayout layout = ElectrodeLayout::grid_2x4();

  void validate() const;
  friend bool operator==(const OrganoidModel &, const OrganoidModel &) = default;
};

OrganoidModel build_organoid(std::uint64_t seed, const OrganoidParams &params = {});

/// Saturating amplitude gain, zero below threshold.
double amplitude_gain(const OrganoidParams &p, double amplitude_uA);
/// Monotone duration gain of one stimulating electrode, 1 at duration_ref_us.
double duration_gain(const OrganoidModel &m, int electrode, double duration_us);
/// Weight of the delayed (secondary) response component.
double secondary_weight(const OrganoidParams &p, int num_pulses);

/// Evoked Poisson means per recording channel. Independent of trigger delay.
std::array<double, kElectrodes> evoked_rates(const OrganoidModel &m, const StimPattern &pattern);

/// Half-open interval [start_us, end_us) relative to stimulus onset.
struct RecordingWindow {
  std::int64_t start_us = 0;
  std::int64_t end_us = 500'000;

  std::int64_t length_us() const { return end_us - start_us; }
  friend bool operator==(const RecordingWindow &, const RecordingWindow &) = default;
};

struct SpikeTrain {
  RecordingWindow window;
  std::array<std::vector<std::int64_t>, kElectrodes> channels;

  std::size_t total() const;
  friend bool operator==(const SpikeTrain &, const SpikeTrain &) = default;
};

/// One stimulation trial. Evoked and spontaneous spikes come from separate
/// seeded streams, so the trigger delay only moves timestamps.
SpikeTrain stimulate(const OrganoidModel &m, const StimPattern &pattern, const RecordingWindow &window,
                     std::uint64_t trial_seed);

/// Parallel over trials; result i uses seeds[i].
std::vector<SpikeTrain> stimulate_batch(const OrganoidModel &m, std::span<const StimPattern> patterns,
                                        const RecordingWindow &window, std::span<const std::uint64_t> seeds);

enum class StimParam { pulses, amplitude, duration, delay };

StimParam parse_stim_param(const std::string &name);
std::string to_string(StimParam p);

/// `base` with one parameter replaced by `value`.
ElectrodeStim with_param(ElectrodeStim base, StimParam param, double value);

/// Sweep defaults: one pulse, 4 uA, 100 us, no delay.
inline constexpr ElectrodeStim kSweepDefaults{1, 4.0, 100.0, 0.0};
/// Spatial-experiment defaults: 5 pulses, 10 uA, 150 us.
inline constexpr ElectrodeStim kSpatialDefaults{5, 10.0, 150.0, 0.0};

struct SweepSpec {
  StimParam param = StimParam::pulses;
  std::vector<double> values;
  int trials = 10;
  std::uint64_t seed = 0;
  ElectrodeStim base = kSweepDefaults;
  RecordingWindow window{0, 200'000};
};

/// Each electrode is stimulated in turn and every channel recorded.
/// Trial seeds depend on (electrode, trial) only, so every value of the
/// sweep sees the same random streams.
struct SweepTable {
  StimParam param;
  std::vector<double> values;
  // mean[v][stim electrode][channel]
  std::vector<std::array<std::array<double, kElectrodes>, kElectrodes>> mean;
  // per value: mean and sample std dev of the total count over (electrode, trial)
  std::vector<double> mean_total;
  std::vector<double> sd_total;
  int samples_per_value = 0;
};

SweepTable run_sweep(const OrganoidModel &m, const SweepSpec &spec);

struct PsthSpec {
  int trials = 100;
  std::uint64_t seed = 0;
  std::int64_t bin_us = 50'000;
  std::int64_t pre_us = 100'000;
  std::int64_t post_us = 500'000;
};

struct Psth {
  std::vector<std::int64_t> bin_start_us; // relative to stimulus onset
  std::vector<double> mean_count;         // all channels, averaged over trials
  std::int64_t bin_us = 0;

  /// Mean of the bins that end at or before the stimulus.
  double pre_stimulus_mean() const;
};

/// `pattern` is applied to all electrodes simultaneously.
Psth psth(const OrganoidModel &m, const StimPattern &pattern, const PsthSpec &spec);

} // namespace biobraille
