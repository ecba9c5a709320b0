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
#include <biobraille/decode_classify.hpp>
#include <biobraille/organoid_sim.hpp>
#include <biobraille/region_features.hpp>
#include <biobraille/stim_encoder.hpp>

#include <cstdint>
#include <span>
#include <vector>

namespace biobraille {

struct PipelineConfig {
  SynthConfig synth;
  RegionGrid grid;
  std::int64_t feature_window_us = kDefaultFeatureWindowUs;
  EncoderRanges ranges;
  OrganoidParams organoid;
  int organoid_count = 3;
  std::vector<std::uint64_t> organoid_seeds; // empty: derived from the master seed
  RecordingWindow readout = kReadoutWindow;
};

/// Everything between the tactile recordings and the classifiers.
struct BrailleData {
  std::vector<TrialLabel> labels;
  std::vector<RegionFeatureSet> features;
  EncoderCalibration calibration;
  std::vector<StimPattern> patterns;
  std::vector<OrganoidModel> organoids;
  std::vector<std::vector<ResponseVector>> single; // per organoid, 8-dim
  std::vector<ResponseVector> ensemble;            // concatenation, 8 * organoids
};

/// Generates each trial and reduces it to features without keeping the
/// streams. Parallel over trials.
std::vector<RegionFeatureSet> synthesize_features(std::span<const TrialLabel> labels, const SynthConfig &synth,
                                                  std::uint64_t master_seed, const RegionGrid &grid,
                                                  std::int64_t window_us);

std::vector<OrganoidModel> default_organoids(const PipelineConfig &cfg, std::uint64_t master_seed);

/// Seed of the stimulation trial for `label`. Shared by all organoids; the
/// model seed decorrelates them.
std::uint64_t stimulation_seed(std::uint64_t master_seed, const TrialLabel &label);

/// Labels, features, calibration and stimulation patterns.
BrailleData prepare_braille_inputs(const PipelineConfig &cfg, std::uint64_t master_seed);
BrailleData prepare_braille_inputs(const PipelineConfig &cfg, std::span<const LabelledStream> streams);

/// Stimulates every organoid with every pattern and decodes the responses.
void attach_organoids(BrailleData &data, std::vector<OrganoidModel> organoids, const RecordingWindow &readout,
                      std::uint64_t master_seed);

BrailleData build_braille_data(const PipelineConfig &cfg, std::uint64_t master_seed);

struct BenchmarkResult {
  std::vector<CVReport> single;
  CVReport ensemble;
};

BenchmarkResult run_braille_benchmark(const BrailleData &data, const CVOptions &cv);
BenchmarkResult run_braille_benchmark(std::span<const LabelledStream> streams, std::span<const OrganoidModel> organoids,
                                      const PipelineConfig &cfg, const CVOptions &cv, std::uint64_t master_seed);

} // namespace biobraille
