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

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace biobraille {

/// One AER pixel event. Time is microseconds since trial start.
struct TactileEvent {
  std::int64_t t_us = 0;
  std::uint16_t x = 0;
  std::uint16_t y = 0;
  std::int8_t polarity = 1;

  friend bool operator==(const TactileEvent &, const TactileEvent &) = default;
};

/// Time-ordered events of one swipe plus the sensor geometry they live on.
struct TactileEventStream {
  std::vector<TactileEvent> events;
  int width = 320;
  int height = 240;
  std::int64_t duration_us = 2'000'000;

  /// Throws std::invalid_argument when ordering, bounds or geometry are broken.
  void validate() const;

  friend bool operator==(const TactileEventStream &, const TactileEventStream &) = default;
};

inline constexpr int kLetterCount = 26;
inline constexpr std::array<double, 5> kDepthsMm = {0.0, 0.1, 0.2, 0.3, 0.4};
inline constexpr int kTrialsPerCondition = 10;

struct TrialLabel {
  char letter = 'A';
  double depth_mm = 0.0;
  int trial_index = 0;

  void validate() const;
  int letter_index() const { return letter - 'A'; }
  /// Position of depth_mm in kDepthsMm.
  int depth_index() const;

  friend bool operator==(const TrialLabel &, const TrialLabel &) = default;
};

/// Standard six-dot cell. Bit (d - 1) of `dots` is set when dot d is raised.
/// Dots 1-3 form the left column top to bottom, dots 4-6 the right column.
struct BrailleCell {
  char letter = 'A';
  std::uint8_t dots = 0;

  bool raised(int dot) const { return (dots >> (dot - 1)) & 1U; }
};

BrailleCell braille_cell(char letter);

/// Parametric stand-in for the tactile sensor. The raised dots of the cell
/// slide left to right across the sensor at constant speed; each dot emits
/// events as an inhomogeneous Poisson process whose spatial profile is a 2-D
/// Gaussian footprint centred on the dot.
struct SynthConfig {
  int width = 320;
  int height = 240;
  std::int64_t duration_us = 2'000'000;

  double dot_pitch_px = 72.0;
  double top_row_y_px = 48.0;
  double start_x_px = 40.0; // left dot column at t = 0
  double swipe_speed_px_s = 100.0;
  double footprint_sigma_px = 9.0;
  double depth_sigma_gain_per_mm = 0.5;

  double dot_rate_hz = 400.0; // per raised dot, at depth 0
  double depth_rate_gain_per_mm = 0.5;
  double noise_rate_hz = 40.0;  // whole-sensor background
  double event_rate_scale = 1.0;

  double speed_jitter = 0.03;       // relative half-width, uniform
  double position_jitter_px = 2.0;  // std dev of the cell offset
  double rate_jitter = 0.05;        // relative std dev of the per-trial rate

  // Dataset extent.
  std::string letters = "ABCDEFGHIJKLMNOPQRSTUVWXYZ";
  std::vector<double> depths_mm = {kDepthsMm.begin(), kDepthsMm.end()};
  int trials = kTrialsPerCondition;

  void validate() const;
};

/// Per-trial jittered swipe kinematics.
struct SwipeGeometry {
  double start_x_px;
  double top_row_y_px;
  double speed_px_s;
  double rate_factor;

  /// Centre of a dot at time t (column 0/1, row 0..2).
  double dot_x(const SynthConfig &cfg, int column, double t_s) const {
    return start_x_px + column * cfg.dot_pitch_px + speed_px_s * t_s;
  }
  double dot_y(const SynthConfig &cfg, int row) const { return top_row_y_px + row * cfg.dot_pitch_px; }
};

SwipeGeometry swipe_geometry(const SynthConfig &cfg, std::uint64_t seed);

/// Expected event rate multiplier for a depth (before per-trial jitter).
double depth_rate_scale(const SynthConfig &cfg, double depth_mm);
double footprint_sigma(const SynthConfig &cfg, double depth_mm);

TactileEventStream generate_trial(const TrialLabel &label, const SynthConfig &cfg, std::uint64_t seed);

/// Seed used for one trial of a dataset generated from `master_seed`.
std::uint64_t trial_seed(std::uint64_t master_seed, const TrialLabel &label);

/// All labels of the configured dataset in letter, depth, trial order.
std::vector<TrialLabel> dataset_labels(const SynthConfig &cfg);

struct LabelledStream {
  TrialLabel label;
  TactileEventStream stream;

  friend bool operator==(const LabelledStream &, const LabelledStream &) = default;
};

/// Full dataset; generation of trials runs in parallel.
std::vector<LabelledStream> generate_dataset(const SynthConfig &cfg, std::uint64_t master_seed);

// ---- canonical AER text format ------------------------------------------

class ParseError : public std::runtime_error {
public:
  ParseError(std::size_t line, const std::string &what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

void write_aer(const TactileEventStream &stream, std::ostream &out);
void write_aer(const TactileEventStream &stream, const std::filesystem::path &path);
TactileEventStream read_aer(std::istream &in);
TactileEventStream read_aer(const std::filesystem::path &path);

/// File name used by the synth command, e.g. "C_d0.3_t07.aer".
std::string aer_file_name(const TrialLabel &label);

} // namespace biobraille
