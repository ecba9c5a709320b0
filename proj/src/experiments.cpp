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


#include <biobraille/experiments.hpp>
#include <biobraille/rng.hpp>

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <sstream>

namespace biobraille {

namespace fs = std::filesystem;

namespace {

std::vector<double> range_values(double lo, double hi, double step) {
  std::vector<double> v;
  for (double x = lo; x <= hi + 1e-9; x += step) v.push_back(x);
  return v;
}

json to_json_runs(const std::vector<ParamValues> &runs) {
  json a = json::array();
  for (const auto &r : runs) a.push_back({{"param", to_string(r.param)}, {"values", r.values}});
  return a;
}

std::vector<ParamValues> runs_from_json(const json &a) {
  std::vector<ParamValues> out;
  for (const auto &r : a) {
    ParamValues p;
    p.param = parse_stim_param(r.at("param").get<std::string>());
    r.at("values").get_to(p.values);
    out.push_back(std::move(p));
  }
  return out;
}

void check_keys(const json &user, const json &reference, const std::string &path, std::vector<std::string> &problems) {
  if (!user.is_object() || !reference.is_object()) return;
  for (const auto &[key, value] : user.items()) {
    const std::string here = path.empty() ? key : path + "." + key;
    if (!reference.contains(key)) {
      problems.push_back(here + ": unknown key");
      continue;
    }
    check_keys(value, reference.at(key), here, problems);
  }
}

template <typename F> void section(const std::string &path, std::vector<std::string> &problems, F &&f) {
  try {
    f();
  } catch (const std::exception &e) {
    problems.push_back(path + ": " + e.what());
  }
}

void check_stim(const ElectrodeStim &s, const std::string &path, std::vector<std::string> &problems) {
  StimPattern p;
  p.electrodes[0] = s;
  try {
    validate_platform(p);
  } catch (const std::exception &e) {
    std::string msg = e.what();
    msg = msg.substr(msg.find(": ") + 2);
    problems.push_back(path + ": " + msg);
  }
}

void check_values(const ParamValues &run, const std::string &path, std::vector<std::string> &problems) {
  if (run.values.empty()) problems.push_back(path + ".values: empty value list");
  const PlatformLimits lim;
  double max = 0;
  const char *unit = "";
  switch (run.param) {
  case StimParam::pulses: max = lim.max_pulses; break;
  case StimParam::amplitude: max = lim.max_amplitude_uA, unit = " uA"; break;
  case StimParam::duration: max = lim.max_duration_us, unit = " us"; break;
  case StimParam::delay: max = lim.max_delay_us, unit = " us"; break;
  }
  for (double v : run.values) {
    if (!(v >= 0 && v <= max)) {
      problems.push_back(path + ".values: " + format_number(v) + " outside platform range 0.." + format_number(max) +
                         unit);
      break;
    }
  }
}

std::string timestamp_utc() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream s;
  s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return s.str();
}

std::string hex64(std::uint64_t v) {
  std::ostringstream s;
  s << std::hex << std::setw(16) << std::setfill('0') << v;
  return s.str();
}

CVOptions cv_options(const ExperimentConfig &cfg) {
  CVOptions cv;
  cv.folds = cfg.folds;
  cv.seed = stage_seed(cfg, "folds");
  cv.classifier = cfg.classifier;
  return cv;
}

void emit(CommandResult &res, const fs::path &dir, const std::string &name, const std::string &text) {
  res.files[name] = write_table(dir / name, text);
}

double pearson(const std::vector<double> &x, const std::vector<double> &y) {
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return sxx > 0 && syy > 0 ? sxy / std::sqrt(sxx * syy) : 0.0;
}

} // namespace

ExperimentConfig ExperimentConfig::defaults() {
  ExperimentConfig c;
  c.sweep.runs = {{StimParam::pulses, range_values(0, 10, 1)},
                  {StimParam::amplitude, range_values(0, 20, 2)},
                  {StimParam::duration, range_values(0, 300, 50)},
                  {StimParam::delay, range_values(0, 4000, 500)}};
  c.spatial.runs = {{StimParam::pulses, {1, 2, 4, 6, 8, 10}},
                    {StimParam::amplitude, {4, 8, 12, 16, 20}},
                    {StimParam::duration, {50, 100, 150, 200, 300}}};
  return c;
}

ConfigError::ConfigError(std::vector<std::string> problems)
    : std::invalid_argument([&] {
        std::string s = "invalid configuration";
        for (const auto &p : problems) s += "\n  " + p;
        return s;
      }()),
      problems_(std::move(problems)) {}

json config_to_json(const ExperimentConfig &c) {
  json kinds = json::array(), noise_kinds = json::array();
  for (auto k : c.compare) kinds.push_back(to_string(k));
  for (auto k : c.noise_kinds) noise_kinds.push_back(to_string(k));
  return {
      {"schema_version", c.schema_version},
      {"master_seed", c.master_seed},
      {"pipeline", c.pipeline},
      {"classify", {{"folds", c.folds}, {"classifier", c.classifier}, {"compare", kinds}}},
      {"noise",
       {{"spec", c.noise},
        {"kinds", noise_kinds},
        {"repeats", c.noise_repeats},
        {"placement", c.noise_placement == NoisePlacement::all ? "all" : "test"}}},
      {"characterization_organoid", c.characterization_organoid},
      {"characterization_model", c.characterization_model ? json(*c.characterization_model) : json(nullptr)},
      {"sweep",
       {{"runs", to_json_runs(c.sweep.runs)},
        {"trials", c.sweep.trials},
        {"base", c.sweep.base},
        {"window", c.sweep.window}}},
      {"temporal",
       {{"pulses", c.temporal.pulses},
        {"base", c.temporal.base},
        {"trials", c.temporal.trials},
        {"bin_us", c.temporal.bin_us},
        {"pre_us", c.temporal.pre_us},
        {"post_us", c.temporal.post_us}}},
      {"spatial",
       {{"runs", to_json_runs(c.spatial.runs)},
        {"trials", c.spatial.trials},
        {"baseline_windows", c.spatial.baseline_windows},
        {"base", c.spatial.base},
        {"window", c.spatial.window}}},
  };
}

ExperimentConfig config_from_json(const json &user) {
  if (!user.is_object()) throw ConfigError({"<root>: configuration must be a JSON object"});
  ExperimentConfig c = ExperimentConfig::defaults();
  json merged = config_to_json(c);
  std::vector<std::string> problems;
  check_keys(user, merged, "", problems);
  if (!problems.empty()) throw ConfigError(problems);
  merged.merge_patch(user);

  section("schema_version", problems, [&] { merged.at("schema_version").get_to(c.schema_version); });
  section("master_seed", problems, [&] { merged.at("master_seed").get_to(c.master_seed); });
  const auto &p = merged.at("pipeline");
  section("pipeline.synth", problems, [&] { p.at("synth").get_to(c.pipeline.synth); });
  section("pipeline.grid", problems, [&] { p.at("grid").get_to(c.pipeline.grid); });
  section("pipeline.feature_window_us", problems, [&] { p.at("feature_window_us").get_to(c.pipeline.feature_window_us); });
  section("pipeline.encoder_ranges", problems, [&] { p.at("encoder_ranges").get_to(c.pipeline.ranges); });
  section("pipeline.organoid", problems, [&] { p.at("organoid").get_to(c.pipeline.organoid); });
  section("pipeline.organoid_count", problems, [&] { p.at("organoid_count").get_to(c.pipeline.organoid_count); });
  section("pipeline.organoid_seeds", problems, [&] { p.at("organoid_seeds").get_to(c.pipeline.organoid_seeds); });
  section("pipeline.readout", problems, [&] { p.at("readout").get_to(c.pipeline.readout); });
  const auto &cl = merged.at("classify");
  section("classify.folds", problems, [&] { cl.at("folds").get_to(c.folds); });
  section("classify.classifier", problems, [&] { cl.at("classifier").get_to(c.classifier); });
  section("classify.compare", problems, [&] {
    c.compare.clear();
    for (const auto &k : cl.at("compare")) c.compare.push_back(parse_classifier_kind(k.get<std::string>()));
  });
  const auto &nz = merged.at("noise");
  section("noise.spec", problems, [&] { nz.at("spec").get_to(c.noise); });
  section("noise.kinds", problems, [&] {
    c.noise_kinds.clear();
    for (const auto &k : nz.at("kinds")) c.noise_kinds.push_back(parse_noise_kind(k.get<std::string>()));
  });
  section("noise.repeats", problems, [&] { nz.at("repeats").get_to(c.noise_repeats); });
  section("noise.placement", problems,
          [&] { c.noise_placement = parse_noise_placement(nz.at("placement").get<std::string>()); });
  section("characterization_organoid", problems,
          [&] { merged.at("characterization_organoid").get_to(c.characterization_organoid); });
  section("characterization_model", problems, [&] {
    const auto it = merged.find("characterization_model");
    if (it != merged.end() && !it->is_null()) c.characterization_model = it->get<OrganoidModel>();
  });
  const auto &sw = merged.at("sweep");
  section("sweep", problems, [&] {
    c.sweep.runs = runs_from_json(sw.at("runs"));
    sw.at("trials").get_to(c.sweep.trials);
    sw.at("base").get_to(c.sweep.base);
    sw.at("window").get_to(c.sweep.window);
  });
  const auto &tp = merged.at("temporal");
  section("temporal", problems, [&] {
    tp.at("pulses").get_to(c.temporal.pulses);
    tp.at("base").get_to(c.temporal.base);
    tp.at("trials").get_to(c.temporal.trials);
    tp.at("bin_us").get_to(c.temporal.bin_us);
    tp.at("pre_us").get_to(c.temporal.pre_us);
    tp.at("post_us").get_to(c.temporal.post_us);
  });
  const auto &sp = merged.at("spatial");
  section("spatial", problems, [&] {
    c.spatial.runs = runs_from_json(sp.at("runs"));
    sp.at("trials").get_to(c.spatial.trials);
    sp.at("baseline_windows").get_to(c.spatial.baseline_windows);
    sp.at("base").get_to(c.spatial.base);
    sp.at("window").get_to(c.spatial.window);
  });
  if (!problems.empty()) throw ConfigError(problems);
  validate_config(c);
  return c;
}

ExperimentConfig load_config(const fs::path &path) { return config_from_json(read_json_file(path)); }

std::vector<std::string> config_diagnostics(const ExperimentConfig &c) {
  std::vector<std::string> problems;
  if (c.schema_version != kSchemaVersion)
    problems.push_back("schema_version: unsupported version " + std::to_string(c.schema_version));

  const auto &sy = c.pipeline.synth;
  if (sy.letters.empty()) problems.push_back("pipeline.synth.letters: empty letters list");
  if (sy.depths_mm.empty()) problems.push_back("pipeline.synth.depths_mm: empty depth list");
  section("pipeline.synth", problems, [&] { sy.validate(); });
  section("pipeline.grid", problems, [&] {
    c.pipeline.grid.validate();
    if (c.pipeline.grid.region_count() != kElectrodes) throw std::invalid_argument("grid must have 8 regions");
  });
  if (c.pipeline.feature_window_us <= 0) problems.push_back("pipeline.feature_window_us: must be positive");

  const auto &r = c.pipeline.ranges;
  const PlatformLimits lim;
  auto range = [&](const Interval &iv, const std::string &name, double max, const std::string &unit) {
    const std::string path = "pipeline.encoder_ranges." + name;
    if (iv.degenerate()) problems.push_back(path + ": lo must be below hi");
    if (iv.lo < 0) problems.push_back(path + ": negative lower bound");
    if (iv.hi > max)
      problems.push_back(path + ": " + format_number(iv.hi) + " exceeds " + format_number(max) + unit +
                         " encoding range");
  };
  range(r.pulses, "pulses", lim.max_pulses, " pulse");
  range(r.amplitude_uA, "amplitude_uA", lim.max_amplitude_uA, " uA");
  range(r.duration_us, "duration_us", lim.max_duration_us, " us");
  range(r.delay_us, "delay_us", lim.max_delay_us, " us");

  section("pipeline.organoid", problems, [&] { c.pipeline.organoid.validate(); });
  if (c.pipeline.organoid_count < 1) problems.push_back("pipeline.organoid_count: need at least one organoid");
  if (!c.pipeline.organoid_seeds.empty() &&
      c.pipeline.organoid_seeds.size() != static_cast<std::size_t>(c.pipeline.organoid_count))
    problems.push_back("pipeline.organoid_seeds: expected " + std::to_string(c.pipeline.organoid_count) + " seeds");
  if (c.pipeline.readout.end_us <= c.pipeline.readout.start_us)
    problems.push_back("pipeline.readout: end_us must exceed start_us");

  if (c.folds < 2) problems.push_back("classify.folds: need at least 2 folds");
  if (c.classifier.knn_k < 1) problems.push_back("classify.classifier.knn_k: must be positive");
  if (c.classifier.svm.epochs < 1 || !(c.classifier.svm.lambda > 0) || !(c.classifier.svm.eta0 > 0))
    problems.push_back("classify.classifier.svm: epochs, lambda and eta0 must be positive");
  if (c.classifier.forest.trees < 1 || c.classifier.forest.max_depth < 1)
    problems.push_back("classify.classifier.forest: trees and max_depth must be positive");

  section("noise.spec", problems, [&] { c.noise.validate(kElectrodes); });
  if (c.noise_repeats < 1) problems.push_back("noise.repeats: need at least one repeat");
  if (c.characterization_organoid < 0 || c.characterization_organoid >= c.pipeline.organoid_count)
    problems.push_back("characterization_organoid: index out of range");

  for (std::size_t i = 0; i < c.sweep.runs.size(); ++i)
    check_values(c.sweep.runs[i], "sweep.runs[" + std::to_string(i) + "]", problems);
  check_stim(c.sweep.base, "sweep.base", problems);
  if (c.sweep.trials < 1) problems.push_back("sweep.trials: must be positive");
  if (c.sweep.window.end_us <= c.sweep.window.start_us) problems.push_back("sweep.window: empty window");

  for (std::size_t i = 0; i < c.temporal.pulses.size(); ++i)
    if (c.temporal.pulses[i] < 1 || c.temporal.pulses[i] > lim.max_pulses)
      problems.push_back("temporal.pulses[" + std::to_string(i) + "]: outside 1..10");
  check_stim(c.temporal.base, "temporal.base", problems);
  if (c.temporal.trials < 1) problems.push_back("temporal.trials: must be positive");
  if (c.temporal.bin_us <= 0 || c.temporal.pre_us % c.temporal.bin_us != 0 || c.temporal.post_us % c.temporal.bin_us != 0)
    problems.push_back("temporal.bin_us: bin must divide the pre and post windows");

  for (std::size_t i = 0; i < c.spatial.runs.size(); ++i)
    check_values(c.spatial.runs[i], "spatial.runs[" + std::to_string(i) + "]", problems);
  check_stim(c.spatial.base, "spatial.base", problems);
  if (c.spatial.trials < 2) problems.push_back("spatial.trials: need at least 2 trials");
  if (c.spatial.baseline_windows < 1) problems.push_back("spatial.baseline_windows: must be positive");
  return problems;
}

void validate_config(const ExperimentConfig &cfg) {
  auto problems = config_diagnostics(cfg);
  if (!problems.empty()) throw ConfigError(std::move(problems));
}

std::string config_hash(const ExperimentConfig &cfg) { return hex64(fnv1a64(config_to_json(cfg).dump())); }

std::uint64_t stage_seed(const ExperimentConfig &cfg, std::string_view stage) {
  return derive_seed(cfg.master_seed, {fnv1a64(stage)});
}

void ResultArchive::append(const std::string &hash, const std::string &stage, const json &payload) const {
  std::ofstream out(path_, std::ios::app);
  if (!out) throw std::runtime_error("cannot append to " + path_.string());
  const json rec = {{"config_hash", hash}, {"stage", stage}, {"payload", payload}, {"timestamp", timestamp_utc()}};
  out << rec.dump() << '\n';
}

std::vector<json> ResultArchive::records() const {
  std::vector<json> out;
  std::ifstream in(path_);
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) out.push_back(json::parse(line));
  return out;
}

std::string write_table(const fs::path &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path.string());
  return hex64(fnv1a64(text));
}

OrganoidModel experiment_model(const ExperimentConfig &cfg) {
  if (cfg.characterization_model) return *cfg.characterization_model;
  return default_organoids(cfg.pipeline, cfg.master_seed).at(static_cast<std::size_t>(cfg.characterization_organoid));
}

CommandResult cmd_sweep(const ExperimentConfig &cfg, const fs::path &dir) {
  CommandResult res{"sweep", {}, json::object()};
  const auto model = experiment_model(cfg);
  for (const auto &run : cfg.sweep.runs) {
    SweepSpec spec;
    spec.param = run.param;
    spec.values = run.values;
    spec.trials = cfg.sweep.trials;
    spec.seed = stage_seed(cfg, "sweep");
    spec.base = cfg.sweep.base;
    spec.window = cfg.sweep.window;
    const auto t = run_sweep(model, spec);
    const auto name = to_string(run.param);

    std::string table = "value,stim_electrode,channel,mean_count\n";
    std::string trend = "value,mean_total,sd_total,samples\n";
    for (std::size_t v = 0; v < t.values.size(); ++v) {
      for (int e = 0; e < kElectrodes; ++e)
        for (int k = 0; k < kElectrodes; ++k)
          table += format_number(t.values[v]) + ',' + std::to_string(e) + ',' + std::to_string(k) + ',' +
                   format_number(t.mean[v][static_cast<std::size_t>(e)][static_cast<std::size_t>(k)]) + '\n';
      trend += format_number(t.values[v]) + ',' + format_number(t.mean_total[v]) + ',' + format_number(t.sd_total[v]) +
               ',' + std::to_string(t.samples_per_value) + '\n';
    }
    emit(res, dir, "sweep_" + name + ".csv", table);
    emit(res, dir, "sweep_" + name + "_trend.csv", trend);
    res.summary[name] = {{"values", t.values}, {"mean_total", t.mean_total}, {"pearson_r", pearson(t.values, t.mean_total)}};
  }
  return res;
}

CommandResult cmd_temporal(const ExperimentConfig &cfg, const fs::path &dir) {
  CommandResult res{"temporal", {}, json::object()};
  const auto model = experiment_model(cfg);
  std::string table = "pulses,bin_start_ms,bin_end_ms,mean_count\n";
  for (int np : cfg.temporal.pulses) {
    PsthSpec spec;
    spec.trials = cfg.temporal.trials;
    spec.seed = stage_seed(cfg, "temporal");
    spec.bin_us = cfg.temporal.bin_us;
    spec.pre_us = cfg.temporal.pre_us;
    spec.post_us = cfg.temporal.post_us;
    ElectrodeStim st = cfg.temporal.base;
    st.num_pulses = np;
    const auto h = psth(model, StimPattern::uniform(st), spec);
    for (std::size_t b = 0; b < h.mean_count.size(); ++b)
      table += std::to_string(np) + ',' + format_number(static_cast<double>(h.bin_start_us[b]) / 1000.0) + ',' +
               format_number(static_cast<double>(h.bin_start_us[b] + h.bin_us) / 1000.0) + ',' +
               format_number(h.mean_count[b]) + '\n';
    res.summary[std::to_string(np)] = {{"pre_stimulus_mean", h.pre_stimulus_mean()}, {"bins", h.mean_count}};
  }
  emit(res, dir, "psth.csv", table);
  return res;
}

CommandResult cmd_spatial(const ExperimentConfig &cfg, const fs::path &dir) {
  CommandResult res{"spatial", {}, json::object()};
  const auto model = experiment_model(cfg);
  for (const auto &run : cfg.spatial.runs) {
    SpatialSpec spec;
    spec.param = run.param;
    spec.values = run.values;
    spec.trials = cfg.spatial.trials;
    spec.baseline_windows = cfg.spatial.baseline_windows;
    spec.seed = stage_seed(cfg, "spatial");
    spec.base = cfg.spatial.base;
    spec.window = cfg.spatial.window;
    const auto r = run_spatial(model, spec);
    const auto radar = radar_summary(r.table);
    const auto name = to_string(run.param);

    std::string metrics = "value,electrode,silhouette_median,centroid_shift_um,global_spike_count,ca_points\n";
    std::string points = "value,electrode,cx,cy\n";
    for (std::size_t v = 0; v < r.table.values.size(); ++v) {
      for (int e = 0; e < kElectrodes; ++e) {
        const auto ei = static_cast<std::size_t>(e);
        const auto val = format_number(r.table.values[v]);
        metrics += val + ',' + std::to_string(e) + ',' + format_number(r.table.silhouette[v][ei]) + ',' +
                   format_number(r.table.shift_um[v][ei]) + ',' + format_number(r.table.spike_count[v][ei]) + ',' +
                   std::to_string(r.clusters[v][ei].points.size()) + '\n';
        for (const auto &p : r.clusters[v][ei].points)
          points += val + ',' + std::to_string(e) + ',' + format_number(p.x) + ',' + format_number(p.y) + '\n';
      }
    }
    std::string polygons = "value,r_silhouette,r_shift,r_count,area\n";
    for (std::size_t v = 0; v < radar.values.size(); ++v)
      polygons += format_number(radar.values[v]) + ',' + format_number(radar.radii[v][0]) + ',' +
                  format_number(radar.radii[v][1]) + ',' + format_number(radar.radii[v][2]) + ',' +
                  format_number(radar.area[v]) + '\n';
    emit(res, dir, "spatial_" + name + ".csv", metrics);
    emit(res, dir, "ca_points_" + name + ".csv", points);
    emit(res, dir, "radar_" + name + ".csv", polygons);
    res.summary[name] = {{"baseline", r.baseline},
                         {"skipped_zero_spike_trials", r.skipped},
                         {"radar_area", radar.area},
                         {"degenerate_axes", radar.degenerate}};
  }
  return res;
}

namespace {

std::string heatmap_input_csv(const BrailleData &d) {
  // Mean stimulation parameters per letter.
  std::vector<std::array<std::array<double, 4>, kElectrodes>> sum(kLetterCount);
  std::vector<int> n(kLetterCount, 0);
  for (std::size_t i = 0; i < d.labels.size(); ++i) {
    const auto l = static_cast<std::size_t>(d.labels[i].letter_index());
    ++n[l];
    for (int e = 0; e < kElectrodes; ++e) {
      const auto &s = d.patterns[i].electrodes[static_cast<std::size_t>(e)];
      auto &acc = sum[l][static_cast<std::size_t>(e)];
      acc[0] += s.num_pulses;
      acc[1] += s.phase_amplitude_uA;
      acc[2] += s.phase_duration_us;
      acc[3] += s.trigger_delay_us;
    }
  }
  std::string out = "letter,electrode,num_pulses,phase_amplitude_uA,phase_duration_us,trigger_delay_us\n";
  for (int l = 0; l < kLetterCount; ++l) {
    if (n[static_cast<std::size_t>(l)] == 0) continue;
    for (int e = 0; e < kElectrodes; ++e) {
      out += std::string(1, static_cast<char>('A' + l)) + ',' + std::to_string(e);
      for (double v : sum[static_cast<std::size_t>(l)][static_cast<std::size_t>(e)])
        out += ',' + format_number(v / n[static_cast<std::size_t>(l)]);
      out += '\n';
    }
  }
  return out;
}

std::string heatmap_output_csv(const BrailleData &d) {
  std::string out = "letter,organoid,channel,mean_count\n";
  for (std::size_t o = 0; o < d.single.size(); ++o) {
    std::vector<std::array<double, kElectrodes>> sum(kLetterCount);
    std::vector<int> n(kLetterCount, 0);
    for (const auto &r : d.single[o]) {
      const auto l = static_cast<std::size_t>(r.label.letter_index());
      ++n[l];
      for (int k = 0; k < kElectrodes; ++k) sum[l][static_cast<std::size_t>(k)] += r.counts[static_cast<std::size_t>(k)];
    }
    for (int l = 0; l < kLetterCount; ++l) {
      if (n[static_cast<std::size_t>(l)] == 0) continue;
      for (int k = 0; k < kElectrodes; ++k)
        out += std::string(1, static_cast<char>('A' + l)) + ',' + std::to_string(o) + ',' + std::to_string(k) + ',' +
               format_number(sum[static_cast<std::size_t>(l)][static_cast<std::size_t>(k)] / n[static_cast<std::size_t>(l)]) +
               '\n';
    }
  }
  return out;
}

std::string accuracy_row(const std::string &mode, int organoid, const CVReport &r) {
  std::string folds;
  for (double a : r.fold_accuracy) folds += (folds.empty() ? "" : ";") + format_number(a);
  return mode + ',' + std::to_string(organoid) + ',' + r.classifier + ',' + format_number(r.mean_accuracy) + ',' +
         format_number(r.pooled_accuracy()) + ',' + folds + '\n';
}

} // namespace

CommandResult cmd_braille(const ExperimentConfig &cfg, const fs::path &dir) {
  CommandResult res{"braille", {}, json::object()};
  const auto data = build_braille_data(cfg.pipeline, cfg.master_seed);
  const auto cv = cv_options(cfg);
  const auto bench = run_braille_benchmark(data, cv);

  std::string acc = "mode,organoid,classifier,mean_accuracy,pooled_accuracy,fold_accuracy\n";
  std::string conf = "mode,organoid,classifier,true,predicted,count\n";
  auto add_conf = [&](const std::string &mode, int o, const CVReport &r) {
    std::istringstream rows(confusion_csv(r));
    std::string line;
    std::getline(rows, line);
    while (std::getline(rows, line)) conf += mode + ',' + std::to_string(o) + ',' + r.classifier + ',' + line + '\n';
  };
  for (std::size_t o = 0; o < bench.single.size(); ++o) {
    emit(res, dir, "report_single_" + std::to_string(o) + ".json", json(bench.single[o]).dump(2) + '\n');
    acc += accuracy_row("single", static_cast<int>(o), bench.single[o]);
    add_conf("single", static_cast<int>(o), bench.single[o]);
  }
  emit(res, dir, "report_ensemble.json", json(bench.ensemble).dump(2) + '\n');
  acc += accuracy_row("ensemble", -1, bench.ensemble);
  add_conf("ensemble", -1, bench.ensemble);

  json comparison = {{to_string(cfg.classifier.kind), bench.ensemble.mean_accuracy}};
  for (auto kind : cfg.compare) {
    if (kind == cfg.classifier.kind) continue;
    CVOptions other = cv;
    other.classifier.kind = kind;
    const auto r = cross_validate(data.ensemble, other);
    emit(res, dir, "report_ensemble_" + to_string(kind) + ".json", json(r).dump(2) + '\n');
    acc += accuracy_row("ensemble", -1, r);
    comparison[to_string(kind)] = r.mean_accuracy;
  }
  emit(res, dir, "accuracy.csv", acc);
  emit(res, dir, "confusion.csv", conf);
  emit(res, dir, "heatmap_input.csv", heatmap_input_csv(data));
  emit(res, dir, "heatmap_output.csv", heatmap_output_csv(data));
  emit(res, dir, "responses.csv", responses_csv(data.single));
  emit(res, dir, "calibration.json", json(data.calibration).dump(2) + '\n');
  for (std::size_t o = 0; o < data.organoids.size(); ++o)
    emit(res, dir, "organoid_" + std::to_string(o) + ".json", json(data.organoids[o]).dump(2) + '\n');

  json singles = json::array();
  for (const auto &r : bench.single) singles.push_back(r.mean_accuracy);
  res.summary = {{"single", singles}, {"ensemble", bench.ensemble.mean_accuracy}, {"ensemble_by_classifier", comparison}};
  return res;
}

CommandResult cmd_robustness(const ExperimentConfig &cfg, const fs::path &dir) {
  CommandResult res{"robustness", {}, json::object()};
  const auto data = build_braille_data(cfg.pipeline, cfg.master_seed);
  RobustnessOptions opts;
  opts.cv = cv_options(cfg);
  opts.noise = cfg.noise;
  opts.kinds = cfg.noise_kinds;
  opts.repeats = cfg.noise_repeats;
  opts.seed = stage_seed(cfg, "noise");
  opts.placement = cfg.noise_placement;
  const auto rep = robustness_report(data.single, data.ensemble, opts);

  std::string rows = "mode,organoid,kind,clean_accuracy,noised_accuracy,noised_sd,degradation,repeats\n";
  for (const auto &r : rep.rows)
    rows += r.mode + ',' + std::to_string(r.organoid) + ',' + to_string(r.kind) + ',' + format_number(r.clean_accuracy) +
            ',' + format_number(r.noised_accuracy) + ',' + format_number(r.noised_sd) + ',' +
            format_number(r.degradation()) + ',' + std::to_string(r.repeats) + '\n';
  std::string bars = "kind,single_mean_degradation,ensemble_mean_degradation\n";
  for (auto k : opts.kinds) {
    const double s = rep.mean_degradation("single", k), e = rep.mean_degradation("ensemble", k);
    bars += to_string(k) + ',' + format_number(s) + ',' + format_number(e) + '\n';
    res.summary[to_string(k)] = {{"single", s}, {"ensemble", e}};
  }
  emit(res, dir, "robustness.csv", rows);
  emit(res, dir, "robustness_summary.csv", bars);
  return res;
}

CommandResult run_archived(const std::string &stage, const ExperimentConfig &cfg, const fs::path &dir) {
  const auto hash = config_hash(cfg);
  CommandResult res;
  try {
    validate_config(cfg);
    fs::create_directories(dir);
    write_json_file(config_to_json(cfg), dir / "config.json");
    if (stage == "sweep") res = cmd_sweep(cfg, dir);
    else if (stage == "temporal") res = cmd_temporal(cfg, dir);
    else if (stage == "spatial") res = cmd_spatial(cfg, dir);
    else if (stage == "braille") res = cmd_braille(cfg, dir);
    else if (stage == "robustness") res = cmd_robustness(cfg, dir);
    else throw std::invalid_argument("unknown stage '" + stage + "'");
    ResultArchive(dir / "archive.jsonl").append(hash, stage, {{"files", res.files}, {"summary", res.summary}});
  } catch (const StageError &) {
    throw;
  } catch (const std::exception &e) {
    throw StageError(stage, e.what(), hash);
  }
  return res;
}

} // namespace biobraille
