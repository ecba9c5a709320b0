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

#include <biobraille/braille_synth.hpp>
#include <biobraille/classifiers.hpp>
#include <biobraille/organoid_sim.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace biobraille {

/// Spike counts per channel for one trial; 8 values per organoid, organoids
/// concatenated in order.
struct ResponseVector {
  TrialLabel label;
  std::vector<double> counts;

  friend bool operator==(const ResponseVector &, const ResponseVector &) = default;
};

inline constexpr RecordingWindow kReadoutWindow{0, 500'000};

/// Counts spikes in the half-open readout window, one organoid after another.
ResponseVector decode(const TrialLabel &label, std::span<const SpikeTrain> trains,
                      const RecordingWindow &readout = kReadoutWindow);

/// Row-wise concatenation of equally long, identically labelled datasets.
std::vector<ResponseVector> concatenate(std::span<const std::vector<ResponseVector>> parts);

FeatureMatrix to_matrix(std::span<const ResponseVector> data);

/// Fold index per sample, stratified by (letter, depth). Throws when a
/// letter has fewer samples than folds.
std::vector<int> stratified_folds(std::span<const ResponseVector> data, int folds, std::uint64_t seed);

struct CVOptions {
  int folds = 5;
  std::uint64_t seed = 0;
  ClassifierConfig classifier;
};

struct CVReport {
  std::string classifier;
  int folds = 0;
  std::vector<double> fold_accuracy;
  double mean_accuracy = 0.0;
  std::vector<std::vector<long>> confusion; // 26 x 26, [true letter][predicted letter]
  long total = 0;

  double pooled_accuracy() const;
};

/// Stratified k-fold cross-validation. Each fold is z-scored with its
/// training statistics. When `test_rows` is given, test predictions read
/// from it instead of `data` (same order and labels).
CVReport cross_validate(std::span<const ResponseVector> data, const CVOptions &opts,
                        std::optional<std::span<const ResponseVector>> test_rows = std::nullopt);

} // namespace biobraille
