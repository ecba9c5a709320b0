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

#include <biobraille/analysis_metrics.hpp>
#include <biobraille/braille_synth.hpp>
#include <biobraille/classifiers.hpp>
#include <biobraille/decode_classify.hpp>
#include <biobraille/noise_harness.hpp>
#include <biobraille/organoid_sim.hpp>
#include <biobraille/pipeline.hpp>
#include <biobraille/region_features.hpp>
#include <biobraille/stim_encoder.hpp>

#include <json.hpp>

#include <filesystem>

namespace biobraille {

using json = nlohmann::json;

// Readers use at() throughout, so a missing key is an error.

void to_json(json &j, const Interval &v);
void from_json(const json &j, Interval &v);
void to_json(json &j, const EncoderRanges &v);
void from_json(const json &j, EncoderRanges &v);
void to_json(json &j, const EncoderCalibration &v);
void from_json(const json &j, EncoderCalibration &v);
void to_json(json &j, const ElectrodeStim &v);
void from_json(const json &j, ElectrodeStim &v);
void to_json(json &j, const StimPattern &v);
void from_json(const json &j, StimPattern &v);

void to_json(json &j, const SynthConfig &v);
void from_json(const json &j, SynthConfig &v);
void to_json(json &j, const TrialLabel &v);
void from_json(const json &j, TrialLabel &v);
void to_json(json &j, const RegionGrid &v);
void from_json(const json &j, RegionGrid &v);

void to_json(json &j, const Point2 &v);
void from_json(const json &j, Point2 &v);
void to_json(json &j, const ElectrodeLayout &v);
void from_json(const json &j, ElectrodeLayout &v);
void to_json(json &j, const OrganoidParams &v);
void from_json(const json &j, OrganoidParams &v);
void to_json(json &j, const OrganoidModel &v);
void from_json(const json &j, OrganoidModel &v);
void to_json(json &j, const RecordingWindow &v);
void from_json(const json &j, RecordingWindow &v);
void to_json(json &j, const SpikeTrain &v);
void from_json(const json &j, SpikeTrain &v);

void to_json(json &j, const SvmParams &v);
void from_json(const json &j, SvmParams &v);
void to_json(json &j, const ForestParams &v);
void from_json(const json &j, ForestParams &v);
void to_json(json &j, const ClassifierConfig &v);
void from_json(const json &j, ClassifierConfig &v);
void to_json(json &j, const CVReport &v);
void from_json(const json &j, CVReport &v);

void to_json(json &j, const NoiseSpec &v);
void from_json(const json &j, NoiseSpec &v);
void to_json(json &j, const RobustnessRow &v);

void to_json(json &j, const PipelineConfig &v);
void from_json(const json &j, PipelineConfig &v);

json read_json_file(const std::filesystem::path &path);
void write_json_file(const json &j, const std::filesystem::path &path);

} // namespace biobraille
