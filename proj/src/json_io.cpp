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


#include <biobraille/json_io.hpp>

#include <fstream>
#include <stdexcept>

namespace biobraille {

void to_json(json &j, const Interval &v) { j = json::array({v.lo, v.hi}); }
void from_json(const json &j, Interval &v) {
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("interval must be [lo, hi]");
  v.lo = j[0].get<double>();
  v.hi = j[1].get<double>();
}

void to_json(json &j, const EncoderRanges &v) {
  j = {{"pulses", v.pulses}, {"duration_us", v.duration_us}, {"delay_us", v.delay_us}, {"amplitude_uA", v.amplitude_uA}};
}
void from_json(const json &j, EncoderRanges &v) {
  j.at("pulses").get_to(v.pulses);
  j.at("duration_us").get_to(v.duration_us);
  j.at("delay_us").get_to(v.delay_us);
  j.at("amplitude_uA").get_to(v.amplitude_uA);
}

void to_json(json &j, const EncoderCalibration &v) {
  j = {{"event_count", v.event_count},
       {"event_duration_us", v.event_duration_us},
       {"peak_time_us", v.peak_time_us},
       {"event_deviation", v.event_deviation},
       {"targets", v.targets}};
}
void from_json(const json &j, EncoderCalibration &v) {
  j.at("event_count").get_to(v.event_count);
  j.at("event_duration_us").get_to(v.event_duration_us);
  j.at("peak_time_us").get_to(v.peak_time_us);
  j.at("event_deviation").get_to(v.event_deviation);
  j.at("targets").get_to(v.targets);
}

void to_json(json &j, const ElectrodeStim &v) {
  j = {{"num_pulses", v.num_pulses},
       {"phase_amplitude_uA", v.phase_amplitude_uA},
       {"phase_duration_us", v.phase_duration_us},
       {"trigger_delay_us", v.trigger_delay_us}};
}
void from_json(const json &j, ElectrodeStim &v) {
  j.at("num_pulses").get_to(v.num_pulses);
  j.at("phase_amplitude_uA").get_to(v.phase_amplitude_uA);
  j.at("phase_duration_us").get_to(v.phase_duration_us);
  j.at("trigger_delay_us").get_to(v.trigger_delay_us);
}

void to_json(json &j, const StimPattern &v) { j = json{{"shape", "biphasic_positive_first"}, {"electrodes", v.electrodes}}; }
void from_json(const json &j, StimPattern &v) {
  const auto &e = j.at("electrodes");
  if (!e.is_array() || e.size() != v.electrodes.size()) throw std::invalid_argument("pattern needs 8 electrodes");
  for (std::size_t i = 0; i < v.electrodes.size(); ++i) e[i].get_to(v.electrodes[i]);
}

void to_json(json &j, const SynthConfig &v) {
  j = {{"width", v.width},
       {"height", v.height},
       {"duration_us", v.duration_us},
       {"dot_pitch_px", v.dot_pitch_px},
       {"top_row_y_px", v.top_row_y_px},
       {"start_x_px", v.start_x_px},
       {"swipe_speed_px_s", v.swipe_speed_px_s},
       {"footprint_sigma_px", v.footprint_sigma_px},
       {"depth_sigma_gain_per_mm", v.depth_sigma_gain_per_mm},
       {"dot_rate_hz", v.dot_rate_hz},
       {"depth_rate_gain_per_mm", v.depth_rate_gain_per_mm},
       {"noise_rate_hz", v.noise_rate_hz},
       {"event_rate_scale", v.event_rate_scale},
       {"speed_jitter", v.speed_jitter},
       {"position_jitter_px", v.position_jitter_px},
       {"rate_jitter", v.rate_jitter},
       {"letters", v.letters},
       {"depths_mm", v.depths_mm},
       {"trials", v.trials}};
}
void from_json(const json &j, SynthConfig &v) {
  j.at("width").get_to(v.width);
  j.at("height").get_to(v.height);
  j.at("duration_us").get_to(v.duration_us);
  j.at("dot_pitch_px").get_to(v.dot_pitch_px);
  j.at("top_row_y_px").get_to(v.top_row_y_px);
  j.at("start_x_px").get_to(v.start_x_px);
  j.at("swipe_speed_px_s").get_to(v.swipe_speed_px_s);
  j.at("footprint_sigma_px").get_to(v.footprint_sigma_px);
  j.at("depth_sigma_gain_per_mm").get_to(v.depth_sigma_gain_per_mm);
  j.at("dot_rate_hz").get_to(v.dot_rate_hz);
  j.at("depth_rate_gain_per_mm").get_to(v.depth_rate_gain_per_mm);
  j.at("noise_rate_hz").get_to(v.noise_rate_hz);
  j.at("event_rate_scale").get_to(v.event_rate_scale);
  j.at("speed_jitter").get_to(v.speed_jitter);
  j.at("position_jitter_px").get_to(v.position_jitter_px);
  j.at("rate_jitter").get_to(v.rate_jitter);
  j.at("letters").get_to(v.letters);
  j.at("depths_mm").get_to(v.depths_mm);
  j.at("trials").get_to(v.trials);
}

void to_json(json &j, const TrialLabel &v) {
  j = {{"letter", std::string(1, v.letter)}, {"depth_mm", v.depth_mm}, {"trial", v.trial_index}};
}
void from_json(const json &j, TrialLabel &v) {
  const auto s = j.at("letter").get<std::string>();
  if (s.size() != 1) throw std::invalid_argument("letter must be a single character");
  v.letter = s[0];
  j.at("depth_mm").get_to(v.depth_mm);
  j.at("trial").get_to(v.trial_index);
}

void to_json(json &j, const RegionGrid &v) { j = {{"rows", v.rows}, {"cols", v.cols}}; }
void from_json(const json &j, RegionGrid &v) {
  j.at("rows").get_to(v.rows);
  j.at("cols").get_to(v.cols);
}

void to_json(json &j, const Point2 &v) { j = json::array({v.x, v.y}); }
void from_json(const json &j, Point2 &v) {
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("point must be [x, y]");
  v.x = j[0].get<double>();
  v.y = j[1].get<double>();
}

void to_json(json &j, const ElectrodeLayout &v) { j = {{"coords", v.coords}, {"um_per_unit", v.um_per_unit}}; }
void from_json(const json &j, ElectrodeLayout &v) {
  j.at("coords").get_to(v.coords);
  j.at("um_per_unit").get_to(v.um_per_unit);
}

void to_json(json &j, const OrganoidParams &v) {
  j = {{"diag_lo", v.diag_lo},
       {"diag_hi", v.diag_hi},
       {"offdiag_max", v.offdiag_max},
       {"offdiag_power", v.offdiag_power},
       {"pulse_gain", v.pulse_gain},
       {"amplitude_threshold_uA", v.amplitude_threshold_uA},
       {"amplitude_saturation_uA", v.amplitude_saturation_uA},
       {"amplitude_floor", v.amplitude_floor},
       {"duration_ref_us", v.duration_ref_us},
       {"duration_exponent_lo", v.duration_exponent_lo},
       {"duration_exponent_hi", v.duration_exponent_hi},
       {"baseline_rate_hz", v.baseline_rate_hz},
       {"primary_tau_ms", v.primary_tau_ms},
       {"secondary_latency_ms", v.secondary_latency_ms},
       {"secondary_width_ms", v.secondary_width_ms},
       {"secondary_weight_max", v.secondary_weight_max},
       {"secondary_onset_pulses", v.secondary_onset_pulses},
       {"refractory_us", v.refractory_us}};
}
void from_json(const json &j, OrganoidParams &v) {
  j.at("diag_lo").get_to(v.diag_lo);
  j.at("diag_hi").get_to(v.diag_hi);
  j.at("offdiag_max").get_to(v.offdiag_max);
  j.at("offdiag_power").get_to(v.offdiag_power);
  j.at("pulse_gain").get_to(v.pulse_gain);
  j.at("amplitude_threshold_uA").get_to(v.amplitude_threshold_uA);
  j.at("amplitude_saturation_uA").get_to(v.amplitude_saturation_uA);
  j.at("amplitude_floor").get_to(v.amplitude_floor);
  j.at("duration_ref_us").get_to(v.duration_ref_us);
  j.at("duration_exponent_lo").get_to(v.duration_exponent_lo);
  j.at("duration_exponent_hi").get_to(v.duration_exponent_hi);
  j.at("baseline_rate_hz").get_to(v.baseline_rate_hz);
  j.at("primary_tau_ms").get_to(v.primary_tau_ms);
  j.at("secondary_latency_ms").get_to(v.secondary_latency_ms);
  j.at("secondary_width_ms").get_to(v.secondary_width_ms);
  j.at("secondary_weight_max").get_to(v.secondary_weight_max);
  j.at("secondary_onset_pulses").get_to(v.secondary_onset_pulses);
  j.at("refractory_us").get_to(v.refractory_us);
}

void to_json(json &j, const OrganoidModel &v) {
  j = {{"seed", v.seed},
       {"params", v.params},
       {"coupling", v.coupling},
       {"duration_exponent", v.duration_exponent},
       {"layout", v.layout}};
}
void from_json(const json &j, OrganoidModel &v) {
  j.at("seed").get_to(v.seed);
  j.at("params").get_to(v.params);
  j.at("coupling").get_to(v.coupling);
  j.at("duration_exponent").get_to(v.duration_exponent);
  j.at("layout").get_to(v.layout);
  v.validate();
}

void to_json(json &j, const RecordingWindow &v) { j = {{"start_us", v.start_us}, {"end_us", v.end_us}}; }
void from_json(const json &j, RecordingWindow &v) {
  j.at("start_us").get_to(v.start_us);
  j.at("end_us").get_to(v.end_us);
  if (v.end_us <= v.start_us) throw std::invalid_argument("recording window must have end_us > start_us");
}

void to_json(json &j, const SpikeTrain &v) { j = {{"window", v.window}, {"channels", v.channels}}; }
void from_json(const json &j, SpikeTrain &v) {
  j.at("window").get_to(v.window);
  j.at("channels").get_to(v.channels);
}

void to_json(json &j, const SvmParams &v) {
  j = {{"lambda", v.lambda}, {"epochs", v.epochs}, {"eta0", v.eta0}, {"balanced", v.balanced}, {"seed", v.seed}};
}
void from_json(const json &j, SvmParams &v) {
  j.at("lambda").get_to(v.lambda);
  j.at("epochs").get_to(v.epochs);
  j.at("eta0").get_to(v.eta0);
  j.at("balanced").get_to(v.balanced);
  j.at("seed").get_to(v.seed);
}

void to_json(json &j, const ForestParams &v) {
  j = {{"trees", v.trees},
       {"max_depth", v.max_depth},
       {"min_samples_split", v.min_samples_split},
       {"max_features", v.max_features},
       {"seed", v.seed}};
}
void from_json(const json &j, ForestParams &v) {
  j.at("trees").get_to(v.trees);
  j.at("max_depth").get_to(v.max_depth);
  j.at("min_samples_split").get_to(v.min_samples_split);
  j.at("max_features").get_to(v.max_features);
  j.at("seed").get_to(v.seed);
}

void to_json(json &j, const ClassifierConfig &v) {
  j = {{"kind", to_string(v.kind)}, {"knn_k", v.knn_k}, {"svm", v.svm}, {"forest", v.forest}};
}
void from_json(const json &j, ClassifierConfig &v) {
  v.kind = parse_classifier_kind(j.at("kind").get<std::string>());
  j.at("knn_k").get_to(v.knn_k);
  j.at("svm").get_to(v.svm);
  j.at("forest").get_to(v.forest);
}

void to_json(json &j, const CVReport &v) {
  j = {{"classifier", v.classifier},
       {"folds", v.folds},
       {"fold_accuracy", v.fold_accuracy},
       {"mean_accuracy", v.mean_accuracy},
       {"pooled_accuracy", v.pooled_accuracy()},
       {"total", v.total},
       {"confusion", v.confusion}};
}
void from_json(const json &j, CVReport &v) {
  j.at("classifier").get_to(v.classifier);
  j.at("folds").get_to(v.folds);
  j.at("fold_accuracy").get_to(v.fold_accuracy);
  j.at("mean_accuracy").get_to(v.mean_accuracy);
  j.at("total").get_to(v.total);
  j.at("confusion").get_to(v.confusion);
}

void to_json(json &j, const NoiseSpec &v) {
  j = {{"kind", to_string(v.kind)},
       {"fraction", v.fraction},
       {"channel_count", v.channel_count},
       {"scale", v.scale},
       {"outlier_factor", v.outlier_factor},
       {"seed", v.seed}};
}
void from_json(const json &j, NoiseSpec &v) {
  v.kind = parse_noise_kind(j.at("kind").get<std::string>());
  j.at("fraction").get_to(v.fraction);
  j.at("channel_count").get_to(v.channel_count);
  j.at("scale").get_to(v.scale);
  j.at("outlier_factor").get_to(v.outlier_factor);
  j.at("seed").get_to(v.seed);
}

void to_json(json &j, const RobustnessRow &v) {
  j = {{"mode", v.mode},
       {"organoid", v.organoid},
       {"kind", to_string(v.kind)},
       {"clean_accuracy", v.clean_accuracy},
       {"noised_accuracy", v.noised_accuracy},
       {"noised_sd", v.noised_sd},
       {"degradation", v.degradation()},
       {"repeats", v.repeats}};
}

void to_json(json &j, const PipelineConfig &v) {
  j = {{"synth", v.synth},
       {"grid", v.grid},
       {"feature_window_us", v.feature_window_us},
       {"encoder_ranges", v.ranges},
       {"organoid", v.organoid},
       {"organoid_count", v.organoid_count},
       {"organoid_seeds", v.organoid_seeds},
       {"readout", v.readout}};
}
void from_json(const json &j, PipelineConfig &v) {
  j.at("synth").get_to(v.synth);
  j.at("grid").get_to(v.grid);
  j.at("feature_window_us").get_to(v.feature_window_us);
  j.at("encoder_ranges").get_to(v.ranges);
  j.at("organoid").get_to(v.organoid);
  j.at("organoid_count").get_to(v.organoid_count);
  j.at("organoid_seeds").get_to(v.organoid_seeds);
  j.at("readout").get_to(v.readout);
}

json read_json_file(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error &e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

void write_json_file(const json &j, const std::filesystem::path &path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

} // namespace biobraille
