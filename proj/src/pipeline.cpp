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


#include <biobraille/pipeline.hpp>
#include <biobraille/rng.hpp>

#include <stdexcept>

namespace biobraille {

std::vector<RegionFeatureSet> synthesize_features(std::span<const TrialLabel> labels, const SynthConfig &synth,
                                                  std::uint64_t master_seed, const RegionGrid &grid,
                                                  std::int64_t window_us) {
  std::vector<RegionFeatureSet> out(labels.size());
  const auto n = static_cast<std::ptrdiff_t>(labels.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto stream = generate_trial(labels[i], synth, trial_seed(master_seed, labels[i]));
    out[i] = extract_features(stream, grid, window_us);
  }
  return out;
}

std::vector<OrganoidModel> default_organoids(const PipelineConfig &cfg, std::uint64_t master_seed) {
  std::vector<OrganoidModel> out;
  if (!cfg.organoid_seeds.empty()) {
    for (std::uint64_t s : cfg.organoid_seeds) out.push_back(build_organoid(s, cfg.organoid));
    return out;
  }
  if (cfg.organoid_count < 1) throw std::invalid_argument("need at least one organoid");
  for (int i = 0; i < cfg.organoid_count; ++i)
    out.push_back(build_organoid(derive_seed(master_seed, {0x0e9a, static_cast<std::uint64_t>(i)}), cfg.organoid));
  return out;
}

std::uint64_t stimulation_seed(std::uint64_t master_seed, const TrialLabel &label) {
  return derive_seed(master_seed, {0x571a, static_cast<std::uint64_t>(label.letter_index()),
                                   static_cast<std::uint64_t>(label.depth_index()),
                                   static_cast<std::uint64_t>(label.trial_index)});
}

namespace {

void finish_inputs(BrailleData &d, const PipelineConfig &cfg) {
  d.calibration = calibrate(d.features, cfg.ranges);
  d.patterns = encode_batch(d.features, d.calibration);
}

} // namespace

BrailleData prepare_braille_inputs(const PipelineConfig &cfg, std::uint64_t master_seed) {
  BrailleData d;
  d.labels = dataset_labels(cfg.synth);
  d.features = synthesize_features(d.labels, cfg.synth, master_seed, cfg.grid, cfg.feature_window_us);
  finish_inputs(d, cfg);
  return d;
}

BrailleData prepare_braille_inputs(const PipelineConfig &cfg, std::span<const LabelledStream> streams) {
  BrailleData d;
  std::vector<TactileEventStream> raw;
  raw.reserve(streams.size());
  for (const auto &s : streams) {
    d.labels.push_back(s.label);
    raw.push_back(s.stream);
  }
  d.features = extract_features_batch(raw, cfg.grid, cfg.feature_window_us);
  finish_inputs(d, cfg);
  return d;
}

void attach_organoids(BrailleData &data, std::vector<OrganoidModel> organoids, const RecordingWindow &readout,
                      std::uint64_t master_seed) {
  if (organoids.empty()) throw std::invalid_argument("need at least one organoid");
  data.organoids = std::move(organoids);
  std::vector<std::uint64_t> seeds;
  seeds.reserve(data.labels.size());
  for (const auto &l : data.labels) seeds.push_back(stimulation_seed(master_seed, l));

  data.single.clear();
  for (const auto &m : data.organoids) {
    const auto trains = stimulate_batch(m, data.patterns, readout, seeds);
    std::vector<ResponseVector> resp;
    resp.reserve(trains.size());
    for (std::size_t i = 0; i < trains.size(); ++i)
      resp.push_back(decode(data.labels[i], std::span<const SpikeTrain>(&trains[i], 1), readout));
    data.single.push_back(std::move(resp));
  }
  data.ensemble = concatenate(data.single);
}

BrailleData build_braille_data(const PipelineConfig &cfg, std::uint64_t master_seed) {
  auto d = prepare_braille_inputs(cfg, master_seed);
  attach_organoids(d, default_organoids(cfg, master_seed), cfg.readout, master_seed);
  return d;
}

BenchmarkResult run_braille_benchmark(const BrailleData &data, const CVOptions &cv) {
  BenchmarkResult r;
  for (const auto &s : data.single) r.single.push_back(cross_validate(s, cv));
  r.ensemble = cross_validate(data.ensemble, cv);
  return r;
}

BenchmarkResult run_braille_benchmark(std::span<const LabelledStream> streams, std::span<const OrganoidModel> organoids,
                                      const PipelineConfig &cfg, const CVOptions &cv, std::uint64_t master_seed) {
  auto d = prepare_braille_inputs(cfg, streams);
  attach_organoids(d, {organoids.begin(), organoids.end()}, cfg.readout, master_seed);
  return run_braille_benchmark(d, cv);
}

} // namespace biobraille
