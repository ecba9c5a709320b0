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


#include <biobraille/braille_synth.hpp>
#include <biobraille/rng.hpp>

#include <algorithm>
#include <cmath>
#include <tuple>

namespace biobraille {

namespace {

// Raised dots per letter, digits are dot numbers.
constexpr std::array<const char *, kLetterCount> kCellDots = {
    "1",    "12",   "14",   "145",   "15",   "124",  "1245", "125",  "24",
    "245",  "13",   "123",  "134",   "1345", "135",  "1234", "12345", "1235",
    "234",  "2345", "136",  "1236",  "2456", "1346", "13456", "1356"};

bool is_canonical_depth(double depth_mm) {
  return std::any_of(kDepthsMm.begin(), kDepthsMm.end(),
                     [&](double d) { return std::abs(d - depth_mm) < 1e-9; });
}

SwipeGeometry draw_geometry(const SynthConfig &cfg, Rng &rng) {
  std::uniform_real_distribution<double> speed(-cfg.speed_jitter, cfg.speed_jitter);
  std::normal_distribution<double> offset(0.0, cfg.position_jitter_px);
  std::normal_distribution<double> rate(0.0, cfg.rate_jitter);
  SwipeGeometry g{};
  g.speed_px_s = cfg.swipe_speed_px_s * (1.0 + speed(rng));
  g.start_x_px = cfg.start_x_px + (cfg.position_jitter_px > 0 ? offset(rng) : 0.0);
  g.top_row_y_px = cfg.top_row_y_px + (cfg.position_jitter_px > 0 ? offset(rng) : 0.0);
  g.rate_factor = std::max(0.0, 1.0 + (cfg.rate_jitter > 0 ? rate(rng) : 0.0));
  return g;
}

} // namespace

void TactileEventStream::validate() const {
  if (width <= 0 || height <= 0) throw std::invalid_argument("sensor resolution must be positive");
  if (duration_us <= 0) throw std::invalid_argument("duration_us must be positive");
  std::int64_t prev = 0;
  for (std::size_t i = 0; i < events.size(); ++i) {
    const auto &e = events[i];
    if (e.t_us < 0 || e.t_us > duration_us)
      throw std::invalid_argument("event " + std::to_string(i) + " outside [0, duration_us]");
    if (e.t_us < prev) throw std::invalid_argument("event " + std::to_string(i) + " breaks time order");
    if (e.x >= width || e.y >= height)
      throw std::invalid_argument("event " + std::to_string(i) + " outside the sensor");
    if (e.polarity != 1 && e.polarity != -1)
      throw std::invalid_argument("event " + std::to_string(i) + " has polarity other than +1/-1");
    prev = e.t_us;
  }
}

void TrialLabel::validate() const {
  if (letter < 'A' || letter > 'Z') throw std::invalid_argument(std::string("letter '") + letter + "' is not A..Z");
  if (!is_canonical_depth(depth_mm))
    throw std::invalid_argument("depth " + std::to_string(depth_mm) + " mm is not one of 0, 0.1, 0.2, 0.3, 0.4");
  if (trial_index < 0 || trial_index >= kTrialsPerCondition)
    throw std::invalid_argument("trial index " + std::to_string(trial_index) + " outside 0..9");
}

int TrialLabel::depth_index() const {
  for (std::size_t i = 0; i < kDepthsMm.size(); ++i) {
    if (std::abs(kDepthsMm[i] - depth_mm) < 1e-9) return static_cast<int>(i);
  }
  return -1;
}

BrailleCell braille_cell(char letter) {
  if (letter >= 'a' && letter <= 'z') letter = static_cast<char>(letter - 'a' + 'A');
  if (letter < 'A' || letter > 'Z') throw std::invalid_argument(std::string("no Braille cell for '") + letter + "'");
  BrailleCell cell{letter, 0};
  for (const char *d = kCellDots[letter - 'A']; *d; ++d) cell.dots |= static_cast<std::uint8_t>(1U << (*d - '1'));
  return cell;
}

void SynthConfig::validate() const {
  if (width <= 0 || height <= 0 || width > 65535 || height > 65535)
    throw std::invalid_argument("sensor resolution out of range");
  if (duration_us <= 0) throw std::invalid_argument("duration_us must be positive");
  if (footprint_sigma_px <= 0) throw std::invalid_argument("footprint_sigma_px must be positive");
  if (dot_rate_hz < 0 || noise_rate_hz < 0 || event_rate_scale < 0)
    throw std::invalid_argument("event rates must be nonnegative");
  if (depth_rate_gain_per_mm <= 0) throw std::invalid_argument("depth_rate_gain_per_mm must be positive");
  if (letters.empty()) throw std::invalid_argument("letters must not be empty");
  for (char c : letters) TrialLabel{c, 0.0, 0}.validate();
  if (depths_mm.empty()) throw std::invalid_argument("depths_mm must not be empty");
  for (double d : depths_mm) TrialLabel{'A', d, 0}.validate();
  if (trials < 1 || trials > kTrialsPerCondition) throw std::invalid_argument("trials must be in 1..10");
}

double depth_rate_scale(const SynthConfig &cfg, double depth_mm) {
  return 1.0 + cfg.depth_rate_gain_per_mm * depth_mm;
}

double footprint_sigma(const SynthConfig &cfg, double depth_mm) {
  return cfg.footprint_sigma_px * (1.0 + cfg.depth_sigma_gain_per_mm * depth_mm);
}

SwipeGeometry swipe_geometry(const SynthConfig &cfg, std::uint64_t seed) {
  Rng rng(seed);
  return draw_geometry(cfg, rng);
}

TactileEventStream generate_trial(const TrialLabel &label, const SynthConfig &cfg, std::uint64_t seed) {
  label.validate();
  cfg.validate();

  Rng rng(seed);
  const SwipeGeometry geom = draw_geometry(cfg, rng);
  const BrailleCell cell = braille_cell(label.letter);

  TactileEventStream stream;
  stream.width = cfg.width;
  stream.height = cfg.height;
  stream.duration_us = cfg.duration_us;

  const double duration_s = static_cast<double>(cfg.duration_us) * 1e-6;
  const double rate = cfg.dot_rate_hz * depth_rate_scale(cfg, label.depth_mm) * geom.rate_factor * cfg.event_rate_scale;
  const double sigma = footprint_sigma(cfg, label.depth_mm);

  std::uniform_int_distribution<std::int64_t> when(0, cfg.duration_us);
  std::normal_distribution<double> spread(0.0, sigma);
  std::bernoulli_distribution positive(0.5);

  auto emit = [&](double fx, double fy, std::int64_t t) {
    const long px = std::lround(fx);
    const long py = std::lround(fy);
    if (px < 0 || py < 0 || px >= cfg.width || py >= cfg.height) return;
    stream.events.push_back({t, static_cast<std::uint16_t>(px), static_cast<std::uint16_t>(py),
                             static_cast<std::int8_t>(positive(rng) ? 1 : -1)});
  };

  for (int dot = 1; dot <= 6; ++dot) {
    if (!cell.raised(dot)) continue;
    const int column = (dot - 1) / 3;
    const int row = (dot - 1) % 3;
    const double cy = geom.dot_y(cfg, row);
    if (rate <= 0) continue;
    std::poisson_distribution<long> count(rate * duration_s);
    const long n = count(rng);
    for (long i = 0; i < n; ++i) {
      const std::int64_t t = when(rng);
      const double cx = geom.dot_x(cfg, column, static_cast<double>(t) * 1e-6);
      const double dx = spread(rng);
      const double dy = spread(rng);
      emit(cx + dx, cy + dy, t);
    }
  }

  const double noise = cfg.noise_rate_hz * cfg.event_rate_scale;
  if (noise > 0) {
    std::poisson_distribution<long> count(noise * duration_s);
    std::uniform_real_distribution<double> ux(-0.5, cfg.width - 0.5);
    std::uniform_real_distribution<double> uy(-0.5, cfg.height - 0.5);
    const long n = count(rng);
    for (long i = 0; i < n; ++i) {
      const std::int64_t t = when(rng);
      const double x = ux(rng);
      const double y = uy(rng);
      emit(std::clamp(x, 0.0, cfg.width - 1.0), std::clamp(y, 0.0, cfg.height - 1.0), t);
    }
  }

  std::sort(stream.events.begin(), stream.events.end(), [](const TactileEvent &a, const TactileEvent &b) {
    return std::tie(a.t_us, a.x, a.y, a.polarity) < std::tie(b.t_us, b.x, b.y, b.polarity);
  });
  return stream;
}

std::uint64_t trial_seed(std::uint64_t master_seed, const TrialLabel &label) {
  return derive_seed(master_seed, {0x5e7u, static_cast<std::uint64_t>(label.letter_index()),
                                   static_cast<std::uint64_t>(label.depth_index()),
                                   static_cast<std::uint64_t>(label.trial_index)});
}

std::vector<TrialLabel> dataset_labels(const SynthConfig &cfg) {
  cfg.validate();
  std::vector<TrialLabel> labels;
  labels.reserve(cfg.letters.size() * cfg.depths_mm.size() * static_cast<std::size_t>(cfg.trials));
  for (char c : cfg.letters) {
    for (double d : cfg.depths_mm) {
      for (int t = 0; t < cfg.trials; ++t) labels.push_back({c, d, t});
    }
  }
  return labels;
}

std::vector<LabelledStream> generate_dataset(const SynthConfig &cfg, std::uint64_t master_seed) {
  const auto labels = dataset_labels(cfg);
  std::vector<LabelledStream> out(labels.size());
  const auto n = static_cast<std::ptrdiff_t>(labels.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    out[i].label = labels[i];
    out[i].stream = generate_trial(labels[i], cfg, trial_seed(master_seed, labels[i]));
  }
  return out;
}

} // namespace biobraille
