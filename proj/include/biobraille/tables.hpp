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
#include <biobraille/region_features.hpp>
#include <biobraille/stim_encoder.hpp>

#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace biobraille {

/// Shortest round-trip decimal form; used for every number in CSV output.
std::string format_number(double v);

struct FeatureRow {
  TrialLabel label;
  RegionFeatureSet features;
};

/// letter,depth,trial,region,count,duration_us,peak_time_us,deviation
std::string features_csv(std::span<const FeatureRow> rows);
std::vector<FeatureRow> read_features_csv(const std::filesystem::path &path);

struct LabelledPattern {
  TrialLabel label;
  StimPattern pattern;
};

/// One JSON object per line.
std::string patterns_jsonl(std::span<const LabelledPattern> rows);
std::vector<LabelledPattern> read_patterns_jsonl(const std::filesystem::path &path);

/// letter,depth,trial,organoid,ch0..ch7; `per_organoid[o][i]` is trial i of
/// organoid o.
std::string responses_csv(std::span<const std::vector<ResponseVector>> per_organoid);

/// Inverse of responses_csv. Every organoid must list the same trials in
/// the same order.
std::vector<std::vector<ResponseVector>> read_responses_csv(const std::filesystem::path &path);

/// true,predicted,count for every nonzero cell.
std::string confusion_csv(const CVReport &report);

} // namespace biobraille
