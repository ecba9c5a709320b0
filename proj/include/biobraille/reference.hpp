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

// Single-threaded versions of the parallel kernels. Kept for tests and the
// benchmark; results must match the parallel versions exactly.

#include <biobraille/analysis_metrics.hpp>
#include <biobraille/braille_synth.hpp>
#include <biobraille/classifiers.hpp>
#include <biobraille/organoid_sim.hpp>
#include <biobraille/region_features.hpp>

#include <span>
#include <vector>

namespace biobraille::serial {

SilhouetteResult silhouette(std::span<const CACluster> clusters);

std::vector<SpikeTrain> stimulate_batch(const OrganoidModel &m, std::span<const StimPattern> patterns,
                                        const RecordingWindow &window, std::span<const std::uint64_t> seeds);

std::vector<RegionFeatureSet> extract_features_batch(std::span<const TactileEventStream> streams,
                                                     const RegionGrid &grid,
                                                     std::int64_t window_us = kDefaultFeatureWindowUs);

std::vector<LabelledStream> generate_dataset(const SynthConfig &cfg, std::uint64_t master_seed);

std::vector<int> predict_all(const Classifier &clf, const FeatureMatrix &x);

/// Brute-force kNN with a full sort; ties resolved like KnnClassifier.
std::vector<int> knn_predict(const FeatureMatrix &train, std::span<const int> labels, int num_classes, int k,
                             const FeatureMatrix &query);

} // namespace biobraille::serial
