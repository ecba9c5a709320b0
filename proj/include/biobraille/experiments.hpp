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

#include <biobraille/json_io.hpp>
#include <biobraille/noise_harness.hpp>
#include <biobraille/organoid_sim.hpp>
#include <biobraille/pipeline.hpp>
#include <biobraille/tables.hpp>

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace biobraille {

inline constexpr int kSchemaVersion = 1;

struct ParamValues {
  StimParam param = StimParam::pulses;
  std::vector<double> values;
};

struct SweepProtocol {
  std::vector<ParamValues> runs;
  int trials = 10;
  ElectrodeStim base = kSweepDefaults;
  RecordingWindow window{0, 200'000};
};

struct TemporalProtocol {
  std::vector<int> pulses{1, 10};
  ElectrodeStim base = kSweepDefaults;
  int trials = 100;
  std::int64_t bin_us = 50'000;
  std::int64_t pre_us = 100'000;
  std::int64_t post_us = 500'000;
};

struct SpatialProtocol {
  std::vector<ParamValues> runs;
  int trials = 100;
  int baseline_windows = 200;
  ElectrodeStim base = kSpatialDefaults;
  RecordingWindow window{0, 500'000};
};

struct ExperimentConfig {
  int schema_version = kSchemaVersion;
  std::uint64_t master_seed = 1;
  PipelineConfig pipeline;
  int folds = 5;
  ClassifierConfig classifier;
  std::vector<ClassifierKind> compare{ClassifierKind::knn, ClassifierKind::forest};
  NoiseSpec noise;
  std::vector<NoiseKind> noise_kinds{kAllNoiseKinds.begin(), kAllNoiseKinds.end()};
  int noise_repeats = 10;
  NoisePlacement noise_placement = NoisePlacement::all;
  int characterization_organoid = 0; // model used by sweep / temporal / spatial
  std::optional<OrganoidModel> characterization_model; // overrides the above when set
  SweepProtocol sweep;
  TemporalProtocol temporal;
  SpatialProtocol spatial;

  static ExperimentConfig defaults();
};

class ConfigError : public std::invalid_argument {
public:
  explicit ConfigError(std::vector<std::string> problems);
  const std::vector<std::string> &problems() const { return problems_; }

private:
  std::vector<std::string> problems_;
};

/// Stage failure; main() reports the stage and config hash.
class StageError : public std::runtime_error {
public:
  StageError(std::string stage, const std::string &what, std::string config_hash = {})
      : std::runtime_error(what), stage_(std::move(stage)), hash_(std::move(config_hash)) {}
  const std::string &stage() const { return stage_; }
  const std::string &config_hash() const { return hash_; }

private:
  std::string stage_;
  std::string hash_;
};

json config_to_json(const ExperimentConfig &cfg);

/// Overlays `j` on the defaults. Unknown keys and type errors are reported
/// with their field path; the result is validated.
ExperimentConfig config_from_json(const json &j);
ExperimentConfig load_config(const std::filesystem::path &path);

/// Every problem found, as "field.path: message". Empty means valid.
std::vector<std::string> config_diagnostics(const ExperimentConfig &cfg);
void validate_config(const ExperimentConfig &cfg);

/// 16 hex digits of the FNV-1a hash of the canonical config JSON.
std::string config_hash(const ExperimentConfig &cfg);

/// Sub-seeds of the master seed, one per experiment stage.
std::uint64_t stage_seed(const ExperimentConfig &cfg, std::string_view stage);

/// Append-only JSON-lines log of emitted tables.
class ResultArchive {
public:
  explicit ResultArchive(std::filesystem::path path) : path_(std::move(path)) {}
  void append(const std::string &config_hash, const std::string &stage, const json &payload) const;
  std::vector<json> records() const;
  const std::filesystem::path &path() const { return path_; }

private:
  std::filesystem::path path_;
};

/// Writes `text` and returns its FNV-1a hash as hex.
std::string write_table(const std::filesystem::path &path, const std::string &text);

/// Outputs of one command: files written (name -> content hash) plus a
/// small summary, both archived.
struct CommandResult {
  std::string stage;
  std::map<std::string, std::string> files;
  json summary;
};

CommandResult cmd_sweep(const ExperimentConfig &cfg, const std::filesystem::path &out_dir);
CommandResult cmd_temporal(const ExperimentConfig &cfg, const std::filesystem::path &out_dir);
CommandResult cmd_spatial(const ExperimentConfig &cfg, const std::filesystem::path &out_dir);
CommandResult cmd_braille(const ExperimentConfig &cfg, const std::filesystem::path &out_dir);
CommandResult cmd_robustness(const ExperimentConfig &cfg, const std::filesystem::path &out_dir);

/// Writes config.json, runs the command and appends to archive.jsonl, all
/// inside `out_dir`. Failures surface as StageError.
CommandResult run_archived(const std::string &stage, const ExperimentConfig &cfg, const std::filesystem::path &out_dir);

/// The organoid used by the characterization experiments.
OrganoidModel experiment_model(const ExperimentConfig &cfg);

} // namespace biobraille
