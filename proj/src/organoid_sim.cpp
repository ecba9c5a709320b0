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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace biobraille {

ElectrodeLayout ElectrodeLayout::grid_2x4() {
  ElectrodeLayout l;
  for (int e = 0; e < kElectrodes; ++e) {
    l.coords[static_cast<std::size_t>(e)] = {(e % 4) / 3.0, static_cast<double>(e / 4)};
  }
  return l;
}

void ElectrodeLayout::validate() const {
  for (std::size_t i = 0; i < coords.size(); ++i) {
    const auto &c = coords[i];
    if (!(c.x >= 0 && c.x <= 1 && c.y >= 0 && c.y <= 1))
      throw std::invalid_argument("electrode " + std::to_string(i) + " coordinate outside [0,1]^2");
    for (std::size_t j = 0; j < i; ++j) {
      if (coords[j] == c) throw std::invalid_argument("electrode coordinates must be distinct");
    }
  }
  if (!(um_per_unit > 0)) throw std::invalid_argument("um_per_unit must be positive");
}

void OrganoidParams::validate() const {
  if (!(diag_lo > 0 && diag_lo <= diag_hi)) throw std::invalid_argument("coupling diagonal range invalid");
  if (!(offdiag_max >= 0 && offdiag_power > 0)) throw std::invalid_argument("coupling off-diagonal spread invalid");
  if (!(pulse_gain >= 0)) throw std::invalid_argument("pulse_gain must be nonnegative");
  if (!(amplitude_threshold_uA >= 0 && amplitude_threshold_uA < amplitude_saturation_uA))
    throw std::invalid_argument("amplitude threshold must be below saturation");
  if (!(amplitude_floor >= 0 && amplitude_floor <= 1)) throw std::invalid_argument("amplitude_floor outside [0,1]");
  if (!(duration_ref_us > 0)) throw std::invalid_argument("duration_ref_us must be positive");
  if (!(duration_exponent_lo > 0 && duration_exponent_lo <= duration_exponent_hi))
    throw std::invalid_argument("duration exponent range invalid");
  if (!(baseline_rate_hz >= 0)) throw std::invalid_argument("baseline_rate_hz must be nonnegative");
  if (!(primary_tau_ms > 0 && secondary_latency_ms >= 0 && secondary_width_ms > 0))
    throw std::invalid_argument("temporal kernel constants invalid");
  if (!(secondary_weight_max >= 0 && secondary_weight_max <= 1))
    throw std::invalid_argument("secondary_weight_max outside [0,1]");
  if (secondary_onset_pulses < 0 || secondary_onset_pulses >= 10)
    throw std::invalid_argument("secondary_onset_pulses outside 0..9");
  if (!(refractory_us >= 0)) throw std::invalid_argument("refractory_us must be nonnegative");
}

void OrganoidModel::validate() const {
  params.validate();
  layout.validate();
  for (int k = 0; k < kElectrodes; ++k) {
    for (int j = 0; j < kElectrodes; ++j) {
      const double c = coupling[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
      if (!(c >= 0)) throw std::invalid_argument("coupling entries must be nonnegative");
      if (k == j && !(c > 0)) throw std::invalid_argument("coupling diagonal must be positive");
    }
    if (!(duration_exponent[static_cast<std::size_t>(k)] > 0))
      throw std::invalid_argument("duration exponents must be positive");
  }
}

OrganoidModel build_organoid(std::uint64_t seed, const OrganoidParams &params) {
  params.validate();
  OrganoidModel m;
  m.seed = seed;
  m.params = params;
  Rng rng(derive_seed(seed, {0x0a6a}));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int k = 0; k < kElectrodes; ++k) {
    for (int j = 0; j < kElectrodes; ++j) {
      const double u = unit(rng);
      m.coupling[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)] =
          k == j ? params.diag_lo + (params.diag_hi - params.diag_lo) * u
                 : params.offdiag_max * std::pow(u, params.offdiag_power);
    }
  }
  for (auto &g : m.duration_exponent) {
    g = params.duration_exponent_lo + (params.duration_exponent_hi - params.duration_exponent_lo) * unit(rng);
  }
  return m;
}

double amplitude_gain(const OrganoidParams &p, double amplitude_uA) {
  if (amplitude_uA < p.amplitude_threshold_uA) return 0.0;
  const double scale = (p.amplitude_saturation_uA - p.amplitude_threshold_uA) / std::log(10.0);
  const double rise = 1.0 - std::exp(-(amplitude_uA - p.amplitude_threshold_uA) / scale);
  return p.amplitude_floor + (1.0 - p.amplitude_floor) * rise;
}

double duration_gain(const OrganoidModel &m, int electrode, double duration_us) {
  if (duration_us <= 0) return 0.0;
  return std::pow(duration_us / m.params.duration_ref_us, m.duration_exponent[static_cast<std::size_t>(electrode)]);
}

double secondary_weight(const OrganoidParams &p, int num_pulses) {
  if (num_pulses <= p.secondary_onset_pulses) return 0.0;
  const double span = 10.0 - p.secondary_onset_pulses;
  return p.secondary_weight_max * std::min(1.0, (num_pulses - p.secondary_onset_pulses) / span);
}

namespace {

// drive[j]: expected spikes per unit coupling from stimulating electrode j.
std::array<double, kElectrodes> electrode_drive(const OrganoidModel &m, const StimPattern &pattern) {
  std::array<double, kElectrodes> drive{};
  for (int j = 0; j < kElectrodes; ++j) {
    const auto &s = pattern.electrodes[static_cast<std::size_t>(j)];
    if (!s.active()) continue;
    drive[static_cast<std::size_t>(j)] = m.params.pulse_gain * s.num_pulses *
                                         amplitude_gain(m.params, s.phase_amplitude_uA) *
                                         duration_gain(m, j, s.phase_duration_us);
  }
  return drive;
}

} // namespace

std::array<double, kElectrodes> evoked_rates(const OrganoidModel &m, const StimPattern &pattern) {
  const auto drive = electrode_drive(m, pattern);
  std::array<double, kElectrodes> rates{};
  for (std::size_t k = 0; k < rates.size(); ++k) {
    for (std::size_t j = 0; j < drive.size(); ++j) rates[k] += m.coupling[k][j] * drive[j];
  }
  return rates;
}

std::size_t SpikeTrain::total() const {
  std::size_t n = 0;
  for (const auto &c : channels) n += c.size();
  return n;
}

SpikeTrain stimulate(const OrganoidModel &m, const StimPattern &pattern, const RecordingWindow &window,
                     std::uint64_t trial_seed) {
  validate_platform(pattern);
  if (window.end_us <= window.start_us) throw std::invalid_argument("recording window must have positive length");
  const auto &p = m.params;
  const auto drive = electrode_drive(m, pattern);

  Rng evoked(derive_seed(m.seed, {trial_seed, 1}));
  Rng spontaneous(derive_seed(m.seed, {trial_seed, 2}));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::exponential_distribution<double> primary(1.0 / (p.primary_tau_ms * 1000.0));
  std::normal_distribution<double> secondary(p.secondary_latency_ms * 1000.0, p.secondary_width_ms * 1000.0);

  SpikeTrain out;
  out.window = window;
  std::vector<double> times;
  for (int k = 0; k < kElectrodes; ++k) {
    times.clear();
    for (int j = 0; j < kElectrodes; ++j) {
      const double lambda = m.coupling[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)] *
                            drive[static_cast<std::size_t>(j)];
      if (lambda <= 0) continue;
      const auto &s = pattern.electrodes[static_cast<std::size_t>(j)];
      const double w2 = secondary_weight(p, s.num_pulses);
      std::poisson_distribution<long> count(lambda);
      const long n = count(evoked);
      for (long i = 0; i < n; ++i) {
        // Fixed number of draws per spike keeps the stream aligned across delays.
        const double pick = unit(evoked);
        const double which_pulse = unit(evoked);
        const double lag_primary = primary(evoked);
        const double lag_secondary = std::max(0.0, secondary(evoked));
        double t;
        if (pick < w2) {
          t = lag_secondary;
        } else {
          const int pulse = std::min(s.num_pulses - 1, static_cast<int>(which_pulse * s.num_pulses));
          t = pulse * kPulseIntervalUs + lag_primary;
        }
        times.push_back(s.trigger_delay_us + t);
      }
    }

    const double span_us = static_cast<double>(window.length_us());
    std::poisson_distribution<long> base(p.baseline_rate_hz * span_us * 1e-6);
    const long nb = p.baseline_rate_hz > 0 ? base(spontaneous) : 0;
    for (long i = 0; i < nb; ++i) times.push_back(static_cast<double>(window.start_us) + unit(spontaneous) * span_us);

    std::sort(times.begin(), times.end());
    for (std::size_t i = 1; i < times.size(); ++i) times[i] = std::max(times[i], times[i - 1] + p.refractory_us);

    auto &chan = out.channels[static_cast<std::size_t>(k)];
    for (double t : times) {
      const auto ti = static_cast<std::int64_t>(std::floor(t));
      if (ti >= window.start_us && ti < window.end_us) chan.push_back(ti);
    }
  }
  return out;
}

std::vector<SpikeTrain> stimulate_batch(const OrganoidModel &m, std::span<const StimPattern> patterns,
                                        const RecordingWindow &window, std::span<const std::uint64_t> seeds) {
  if (patterns.size() != seeds.size()) throw std::invalid_argument("one seed per pattern required");
  std::vector<SpikeTrain> out(patterns.size());
  const auto n = static_cast<std::ptrdiff_t>(patterns.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = stimulate(m, patterns[i], window, seeds[i]);
  return out;
}

StimParam parse_stim_param(const std::string &name) {
  if (name == "pulses") return StimParam::pulses;
  if (name == "amplitude") return StimParam::amplitude;
  if (name == "duration") return StimParam::duration;
  if (name == "delay") return StimParam::delay;
  throw std::invalid_argument("unknown stimulation parameter '" + name + "'");
}

std::string to_string(StimParam p) {
  switch (p) {
  case StimParam::pulses: return "pulses";
  case StimParam::amplitude: return "amplitude";
  case StimParam::duration: return "duration";
  case StimParam::delay: return "delay";
  }
  return "?";
}

ElectrodeStim with_param(ElectrodeStim base, StimParam param, double value) {
  switch (param) {
  case StimParam::pulses: base.num_pulses = static_cast<int>(std::lround(value)); break;
  case StimParam::amplitude: base.phase_amplitude_uA = value; break;
  case StimParam::duration: base.phase_duration_us = value; break;
  case StimParam::delay: base.trigger_delay_us = value; break;
  }
  return base;
}

SweepTable run_sweep(const OrganoidModel &m, const SweepSpec &spec) {
  if (spec.trials < 1) throw std::invalid_argument("sweep needs at least one trial");
  SweepTable table;
  table.param = spec.param;
  table.values = spec.values;
  table.samples_per_value = spec.trials * kElectrodes;
  const std::size_t nv = spec.values.size();
  table.mean.resize(nv);
  table.mean_total.resize(nv);
  table.sd_total.resize(nv);

  std::vector<std::uint64_t> seeds;
  for (int e = 0; e < kElectrodes; ++e) {
    for (int t = 0; t < spec.trials; ++t)
      seeds.push_back(derive_seed(spec.seed, {static_cast<std::uint64_t>(e), static_cast<std::uint64_t>(t)}));
  }

  for (std::size_t v = 0; v < nv; ++v) {
    const ElectrodeStim stim = with_param(spec.base, spec.param, spec.values[v]);
    std::vector<StimPattern> patterns;
    for (int e = 0; e < kElectrodes; ++e) {
      for (int t = 0; t < spec.trials; ++t) patterns.push_back(StimPattern::single(e, stim));
    }
    const auto trains = stimulate_batch(m, patterns, spec.window, seeds);

    auto &mean = table.mean[v];
    for (auto &row : mean) row.fill(0.0);
    std::vector<double> totals;
    totals.reserve(trains.size());
    for (std::size_t i = 0; i < trains.size(); ++i) {
      const std::size_t e = i / static_cast<std::size_t>(spec.trials);
      for (std::size_t k = 0; k < kElectrodes; ++k)
        mean[e][k] += static_cast<double>(trains[i].channels[k].size()) / spec.trials;
      totals.push_back(static_cast<double>(trains[i].total()));
    }
    const double mu = std::accumulate(totals.begin(), totals.end(), 0.0) / static_cast<double>(totals.size());
    double ss = 0.0;
    for (double x : totals) ss += (x - mu) * (x - mu);
    table.mean_total[v] = mu;
    table.sd_total[v] = totals.size() > 1 ? std::sqrt(ss / static_cast<double>(totals.size() - 1)) : 0.0;
  }
  return table;
}

double Psth::pre_stimulus_mean() const {
  double sum = 0.0;
  int n = 0;
  for (std::size_t i = 0; i < bin_start_us.size(); ++i) {
    if (bin_start_us[i] + bin_us <= 0) {
      sum += mean_count[i];
      ++n;
    }
  }
  return n > 0 ? sum / n : 0.0;
}

Psth psth(const OrganoidModel &m, const StimPattern &pattern, const PsthSpec &spec) {
  if (spec.bin_us <= 0 || spec.pre_us < 0 || spec.post_us <= 0) throw std::invalid_argument("invalid PSTH window");
  if (spec.pre_us % spec.bin_us != 0 || spec.post_us % spec.bin_us != 0)
    throw std::invalid_argument("PSTH bin must divide the pre- and post-stimulus spans");
  if (spec.trials < 1) throw std::invalid_argument("PSTH needs at least one trial");

  const RecordingWindow window{-spec.pre_us, spec.post_us};
  std::vector<StimPattern> patterns(static_cast<std::size_t>(spec.trials), pattern);
  std::vector<std::uint64_t> seeds;
  for (int t = 0; t < spec.trials; ++t) seeds.push_back(derive_seed(spec.seed, {static_cast<std::uint64_t>(t)}));
  const auto trains = stimulate_batch(m, patterns, window, seeds);

  Psth h;
  h.bin_us = spec.bin_us;
  const auto bins = static_cast<std::size_t>((spec.pre_us + spec.post_us) / spec.bin_us);
  h.mean_count.assign(bins, 0.0);
  for (std::size_t b = 0; b < bins; ++b) h.bin_start_us.push_back(-spec.pre_us + static_cast<std::int64_t>(b) * spec.bin_us);
  for (const auto &train : trains) {
    for (const auto &chan : train.channels) {
      for (std::int64_t t : chan) h.mean_count[static_cast<std::size_t>((t + spec.pre_us) / spec.bin_us)] += 1.0;
    }
  }
  for (double &c : h.mean_count) c /= spec.trials;
  return h;
}

} // namespace biobraille
