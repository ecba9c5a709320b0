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

#include <biobraille/decode_classify.hpp>

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace biobraille {

enum class NoiseKind { gaussian, uniform, missing, outliers };

inline constexpr std::array<NoiseKind, 4> kAllNoiseKinds = {NoiseKind::gaussian, NoiseKind::uniform,
                                                            NoiseKind::missing, NoiseKind::outliers};

NoiseKind parse_noise_kind(const std::string &name);
std::string to_string(NoiseKind kind);

/// gaussian: + N(0, (scale * sd_c)^2) on every sample of a chosen channel
/// uniform:  + U(-scale * sd_c, scale * sd_c)
/// missing:  round(fraction * n) samples of the channel set to 0
/// outliers: round(fraction * n) samples multiplied by outlier_factor
/// sd_c is the population std dev of the clean channel. Results are
/// floored at zero.
struct NoiseSpec {
  NoiseKind kind = NoiseKind::gaussian;
  double fraction = 0.4;
  int channel_count = 4;
  double scale = 0.4;
  double outlier_factor = 3.0;
  std::uint64_t seed = 0;

  void validate(std::size_t dimension) const;
};

struct NoisedDataset {
  std::vector<ResponseVector> data;
  std::vector<int> channels; // in draw order
};

NoisedDataset apply_noise(std::span<const ResponseVector> data, const NoiseSpec &spec);

/// The channels apply_noise would pick for this seed and dimension.
std::vector<int> draw_noise_channels(std::size_t dimension, int count, std::uint64_t seed);

enum class NoisePlacement { all, test };

NoisePlacement parse_noise_placement(const std::string &name);

struct RobustnessRow {
  std::string mode; // "single" or "ensemble"
  int organoid = -1; // single mode: organoid index; -1 for the ensemble
  NoiseKind kind = NoiseKind::gaussian;
  double clean_accuracy = 0.0;
  double noised_accuracy = 0.0; // mean over repeats
  double noised_sd = 0.0;
  int repeats = 0;

  double degradation() const { return clean_accuracy - noised_accuracy; }
};

struct RobustnessOptions {
  CVOptions cv;
  NoiseSpec noise;                  // kind and seed are overwritten per run
  std::vector<NoiseKind> kinds{kAllNoiseKinds.begin(), kAllNoiseKinds.end()};
  int repeats = 10;
  std::uint64_t seed = 0;
  NoisePlacement placement = NoisePlacement::all;
};

struct RobustnessReport {
  std::vector<RobustnessRow> rows;

  /// Mean degradation of one mode and kind, averaged over organoids.
  double mean_degradation(const std::string &mode, NoiseKind kind) const;
};

/// Clean vs noised cross-validated accuracy for every single-organoid
/// dataset and the concatenated ensemble.
RobustnessReport robustness_report(std::span<const std::vector<ResponseVector>> singles,
                                   std::span<const ResponseVector> ensemble, const RobustnessOptions &opts);

} // namespace biobraille
