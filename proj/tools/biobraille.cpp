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
#include <biobraille/json_io.hpp>
#include <biobraille/pipeline.hpp>
#include <biobraille/tables.hpp>

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace biobraille;

namespace {

struct Globals {
  std::string config;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::string out;
};

ExperimentConfig resolve_config(const Globals &g) {
  ExperimentConfig cfg = g.config.empty() ? ExperimentConfig::defaults() : load_config(g.config);
  if (g.seed_set) cfg.master_seed = g.seed;
  validate_config(cfg);
  return cfg;
}

std::vector<std::string> split(const std::string &s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep))
    if (!cur.empty()) out.push_back(cur);
  return out;
}

// "A..Z", "A,B,C" or "ABC".
std::string parse_letters(const std::string &s) {
  if (s.size() == 4 && s.substr(1, 2) == "..") {
    if (s[0] > s[3]) throw std::invalid_argument("bad letter range " + s);
    std::string out;
    for (char c = s[0]; c <= s[3]; ++c) out += c;
    return out;
  }
  std::string out;
  for (char c : s)
    if (c != ',') out += c;
  return out;
}

std::vector<double> parse_numbers(const std::string &s) {
  std::vector<double> out;
  for (const auto &t : split(s, ',')) {
    std::size_t used = 0;
    const double v = std::stod(t, &used);
    if (used != t.size()) throw std::invalid_argument("bad number '" + t + "'");
    out.push_back(v);
  }
  return out;
}

void write_text(const fs::path &path, const std::string &text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  write_table(path, text);
}

fs::path out_dir(const Globals &g, const std::string &stage) { return g.out.empty() ? fs::path("results") / stage : fs::path(g.out); }

fs::path require_out(const Globals &g, const std::string &verb) {
  if (g.out.empty()) throw std::invalid_argument(verb + " needs --out");
  return g.out;
}

void run_synth(const Globals &g, const std::string &letters, const std::string &depths, int trials) {
  auto cfg = resolve_config(g);
  auto &sy = cfg.pipeline.synth;
  if (!letters.empty()) sy.letters = parse_letters(letters);
  if (!depths.empty()) sy.depths_mm = parse_numbers(depths);
  if (trials > 0) sy.trials = trials;
  validate_config(cfg);
  const fs::path dir = require_out(g, "synth");
  fs::create_directories(dir);
  const auto data = generate_dataset(sy, cfg.master_seed);
  std::string manifest = "file,letter,depth,trial,events\n";
  for (const auto &s : data) {
    const auto name = aer_file_name(s.label);
    write_aer(s.stream, dir / name);
    manifest += name + ',' + std::string(1, s.label.letter) + ',' + format_number(s.label.depth_mm) + ',' +
                std::to_string(s.label.trial_index) + ',' + std::to_string(s.stream.events.size()) + '\n';
  }
  write_text(dir / "manifest.csv", manifest);
  std::cout << "wrote " << data.size() << " trials to " << dir.string() << '\n';
}

void run_features(const Globals &g, const std::string &in, const std::string &grid, double window_ms) {
  const auto cfg = resolve_config(g);
  RegionGrid rg = cfg.pipeline.grid;
  if (!grid.empty()) {
    const auto parts = split(grid, 'x');
    if (parts.size() != 2) throw std::invalid_argument("grid must look like 2x4");
    rg.rows = std::stoi(parts[0]);
    rg.cols = std::stoi(parts[1]);
  }
  rg.validate();
  const auto window_us = window_ms > 0 ? static_cast<std::int64_t>(std::llround(window_ms * 1000)) : cfg.pipeline.feature_window_us;

  std::vector<FeatureRow> rows;
  std::ifstream manifest(fs::path(in) / "manifest.csv");
  if (!manifest) throw std::runtime_error("cannot open " + (fs::path(in) / "manifest.csv").string());
  std::string line;
  std::getline(manifest, line);
  std::vector<std::pair<TrialLabel, fs::path>> todo;
  while (std::getline(manifest, line)) {
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 5 || f[1].size() != 1) throw std::runtime_error("bad manifest line: " + line);
    TrialLabel l{f[1][0], std::stod(f[2]), std::stoi(f[3])};
    l.validate();
    todo.emplace_back(l, fs::path(in) / f[0]);
  }
  rows.resize(todo.size());
  for (std::size_t i = 0; i < todo.size(); ++i) {
    try {
      rows[i] = {todo[i].first, extract_features(read_aer(todo[i].second), rg, window_us)};
    } catch (const ParseError &e) {
      throw std::runtime_error(todo[i].second.string() + ": " + e.what());
    }
  }
  write_text(require_out(g, "features"), features_csv(rows));
  std::cout << "wrote features for " << rows.size() << " trials\n";
}

void run_encode(const Globals &g, const std::string &features, const std::string &cal_in, const std::string &cal_out) {
  const auto cfg = resolve_config(g);
  const auto rows = read_features_csv(features);
  std::vector<RegionFeatureSet> sets;
  for (const auto &r : rows) sets.push_back(r.features);
  EncoderCalibration cal;
  if (!cal_in.empty()) {
    read_json_file(cal_in).get_to(cal);
  } else {
    cal = calibrate(sets, cfg.pipeline.ranges);
  }
  if (!cal_out.empty()) write_json_file(json(cal), cal_out);
  std::vector<LabelledPattern> out;
  for (std::size_t i = 0; i < rows.size(); ++i) out.push_back({rows[i].label, encode(sets[i], cal)});
  write_text(require_out(g, "encode"), patterns_jsonl(out));
  std::cout << "encoded " << out.size() << " trials\n";
}

void run_sim(const Globals &g, const std::vector<std::string> &models, const std::string &stim,
             const std::string &responses, const std::string &save_models) {
  const auto cfg = resolve_config(g);
  std::vector<OrganoidModel> organoids;
  for (const auto &m : models) organoids.push_back(read_json_file(m).get<OrganoidModel>());
  if (organoids.empty()) organoids = default_organoids(cfg.pipeline, cfg.master_seed);
  if (!save_models.empty()) {
    fs::create_directories(save_models);
    for (std::size_t o = 0; o < organoids.size(); ++o)
      write_json_file(json(organoids[o]), fs::path(save_models) / ("organoid_" + std::to_string(o) + ".json"));
  }
  if (stim.empty()) return;

  const auto patterns = read_patterns_jsonl(stim);
  std::vector<StimPattern> ps;
  std::vector<std::uint64_t> seeds;
  for (const auto &p : patterns) {
    ps.push_back(p.pattern);
    seeds.push_back(stimulation_seed(cfg.master_seed, p.label));
  }
  std::string spikes;
  std::vector<std::vector<ResponseVector>> resp(organoids.size());
  for (std::size_t o = 0; o < organoids.size(); ++o) {
    const auto trains = stimulate_batch(organoids[o], ps, cfg.pipeline.readout, seeds);
    for (std::size_t i = 0; i < trains.size(); ++i) {
      json j = trains[i];
      j["label"] = patterns[i].label;
      j["organoid"] = o;
      spikes += j.dump() + '\n';
      resp[o].push_back(decode(patterns[i].label, std::span<const SpikeTrain>(&trains[i], 1), cfg.pipeline.readout));
    }
  }
  if (!g.out.empty()) write_text(g.out, spikes);
  if (!responses.empty()) write_text(responses, responses_csv(resp));
  std::cout << "simulated " << patterns.size() << " trials on " << organoids.size() << " organoids\n";
}

std::vector<ResponseVector> select_mode(const std::vector<std::vector<ResponseVector>> &all, const std::string &mode,
                                        int organoid) {
  if (all.empty()) throw std::invalid_argument("no responses");
  if (mode == "ensemble") return concatenate(all);
  if (mode != "single") throw std::invalid_argument("mode must be single or ensemble");
  if (organoid < 0 || static_cast<std::size_t>(organoid) >= all.size())
    throw std::invalid_argument("organoid index out of range");
  return all[static_cast<std::size_t>(organoid)];
}

void run_classify(const Globals &g, const std::string &responses, const std::string &mode, int organoid,
                  const std::string &clf, int folds) {
  auto cfg = resolve_config(g);
  const auto all = read_responses_csv(responses);
  const auto data = select_mode(all, mode, organoid);
  CVOptions cv;
  cv.folds = folds > 0 ? folds : cfg.folds;
  cv.seed = stage_seed(cfg, "folds");
  cv.classifier = cfg.classifier;
  if (!clf.empty()) cv.classifier.kind = parse_classifier_kind(clf);
  const auto rep = cross_validate(data, cv);
  const fs::path out = require_out(g, "classify");
  json j = rep;
  j["mode"] = mode;
  if (mode == "single") j["organoid"] = organoid;
  j["config_hash"] = config_hash(cfg);
  write_text(out, j.dump(2) + '\n');
  fs::path conf = out;
  conf.replace_extension(".confusion.csv");
  write_text(conf, confusion_csv(rep));
  std::cout << rep.classifier << ' ' << mode << " accuracy " << format_number(rep.mean_accuracy) << '\n';
}

std::vector<NoiseKind> parse_kinds(const std::string &s) {
  if (s.empty() || s == "all") return {kAllNoiseKinds.begin(), kAllNoiseKinds.end()};
  std::vector<NoiseKind> out;
  for (const auto &t : split(s, ',')) out.push_back(parse_noise_kind(t));
  return out;
}

void run_robustness(const Globals &g, const std::string &responses, const std::string &noise, int repeats,
                    const std::string &apply_to) {
  auto cfg = resolve_config(g);
  if (!noise.empty()) cfg.noise_kinds = parse_kinds(noise);
  if (repeats > 0) cfg.noise_repeats = repeats;
  if (!apply_to.empty()) cfg.noise_placement = parse_noise_placement(apply_to);
  validate_config(cfg);
  if (responses.empty()) {
    const auto res = run_archived("robustness", cfg, out_dir(g, "robustness"));
    std::cout << res.summary.dump(2) << '\n';
    return;
  }
  const auto singles = read_responses_csv(responses);
  RobustnessOptions opts;
  opts.cv.folds = cfg.folds;
  opts.cv.seed = stage_seed(cfg, "folds");
  opts.cv.classifier = cfg.classifier;
  opts.noise = cfg.noise;
  opts.kinds = cfg.noise_kinds;
  opts.repeats = cfg.noise_repeats;
  opts.seed = stage_seed(cfg, "noise");
  opts.placement = cfg.noise_placement;
  const auto ensemble = singles.size() > 1 ? concatenate(singles) : std::vector<ResponseVector>{};
  const auto rep = robustness_report(singles, ensemble, opts);
  std::string rows = "mode,organoid,kind,clean_accuracy,noised_accuracy,noised_sd,degradation,repeats\n";
  for (const auto &r : rep.rows)
    rows += r.mode + ',' + std::to_string(r.organoid) + ',' + to_string(r.kind) + ',' + format_number(r.clean_accuracy) +
            ',' + format_number(r.noised_accuracy) + ',' + format_number(r.noised_sd) + ',' +
            format_number(r.degradation()) + ',' + std::to_string(r.repeats) + '\n';
  write_text(require_out(g, "robustness"), rows);
  std::cout << "robustness over " << rep.rows.size() << " mode/kind rows\n";
}

void report_files(const CommandResult &res) {
  for (const auto &[name, hash] : res.files) std::cout << hash << "  " << name << '\n';
}

void apply_model(ExperimentConfig &cfg, const std::string &model) {
  if (!model.empty()) cfg.characterization_model = read_json_file(model).get<OrganoidModel>();
}

std::vector<ParamValues> override_runs(const std::vector<ParamValues> &runs, const std::string &param,
                                       const std::string &values) {
  if (param.empty()) {
    if (!values.empty()) throw std::invalid_argument("--values needs --param");
    return runs;
  }
  ParamValues pv{parse_stim_param(param), {}};
  if (!values.empty()) {
    pv.values = parse_numbers(values);
  } else {
    for (const auto &r : runs)
      if (r.param == pv.param) pv.values = r.values;
  }
  return {pv};
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Open-loop tactile Braille pipeline with simulated organoid responses"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--config", g.config, "Experiment configuration (JSON)")->check(CLI::ExistingFile);
  auto *seed_opt = app.add_option("--seed", g.seed, "Master seed");
  app.add_option("--out", g.out, "Output file or directory");

  std::string stage = "cli";
  std::function<void()> action;

  std::string letters, depths;
  int trials = 0;
  auto *synth = app.add_subcommand("synth", "Generate synthetic tactile AER recordings");
  synth->add_option("--letters", letters, "Letters, e.g. A..Z or ABC");
  synth->add_option("--depths", depths, "Comma-separated depths in mm");
  synth->add_option("--trials", trials, "Trials per letter and depth");
  synth->callback([&] { stage = "synth"; action = [&] { run_synth(g, letters, depths, trials); }; });

  std::string in_dir, grid;
  double window_ms = 0;
  auto *features = app.add_subcommand("features", "Extract region features from AER recordings");
  features->add_option("--in", in_dir, "Directory written by synth")->required();
  features->add_option("--grid", grid, "Region grid, rows x cols");
  features->add_option("--window-ms", window_ms, "Feature window in ms");
  features->callback([&] { stage = "features"; action = [&] { run_features(g, in_dir, grid, window_ms); }; });

  std::string features_csv_path, cal_in, cal_out;
  auto *enc = app.add_subcommand("encode", "Map features to stimulation patterns");
  enc->add_option("--features", features_csv_path, "features.csv")->required();
  enc->add_option("--cal", cal_in, "Use this calibration instead of fitting one");
  enc->add_option("--save-cal", cal_out, "Write the calibration used");
  enc->callback([&] { stage = "encode"; action = [&] { run_encode(g, features_csv_path, cal_in, cal_out); }; });

  std::vector<std::string> models;
  std::string stim, responses_out, save_models;
  auto *sim = app.add_subcommand("sim", "Stimulate simulated organoids");
  sim->add_option("--model", models, "Organoid model JSON (repeatable); default organoids otherwise");
  sim->add_option("--stim", stim, "Stimulation patterns (JSON lines)");
  sim->add_option("--responses", responses_out, "Write per-channel spike counts as CSV");
  sim->add_option("--save-models", save_models, "Write the organoid models to this directory");
  sim->callback([&] { stage = "sim"; action = [&] { run_sim(g, models, stim, responses_out, save_models); }; });

  std::string model, param, values;
  int exp_trials = 0;
  auto *sweep = app.add_subcommand("sweep", "Spike count vs stimulation parameter");
  sweep->add_option("--model", model, "Organoid model JSON");
  sweep->add_option("--param", param, "pulses, amplitude, duration or delay");
  sweep->add_option("--values", values, "Comma-separated values");
  sweep->add_option("--trials", exp_trials, "Trials per value");
  sweep->callback([&] {
    stage = "sweep";
    action = [&] {
      auto cfg = resolve_config(g);
      apply_model(cfg, model);
      cfg.sweep.runs = override_runs(cfg.sweep.runs, param, values);
      if (exp_trials > 0) cfg.sweep.trials = exp_trials;
      report_files(run_archived("sweep", cfg, out_dir(g, "sweep")));
    };
  });

  std::string pulses;
  auto *temporal = app.add_subcommand("temporal", "Peristimulus time histograms");
  temporal->add_option("--model", model, "Organoid model JSON");
  temporal->add_option("--pulses", pulses, "Comma-separated pulse counts");
  temporal->add_option("--trials", exp_trials, "Trials per condition");
  temporal->callback([&] {
    stage = "temporal";
    action = [&] {
      auto cfg = resolve_config(g);
      apply_model(cfg, model);
      if (!pulses.empty()) {
        cfg.temporal.pulses.clear();
        for (double p : parse_numbers(pulses)) cfg.temporal.pulses.push_back(static_cast<int>(p));
      }
      if (exp_trials > 0) cfg.temporal.trials = exp_trials;
      report_files(run_archived("temporal", cfg, out_dir(g, "temporal")));
    };
  });

  auto *spatial = app.add_subcommand("spatial", "Center-of-activity clustering metrics");
  spatial->add_option("--model", model, "Organoid model JSON");
  spatial->add_option("--param", param, "pulses, amplitude or duration");
  spatial->add_option("--values", values, "Comma-separated values");
  spatial->add_option("--trials", exp_trials, "Trials per electrode and value");
  spatial->callback([&] {
    stage = "spatial";
    action = [&] {
      auto cfg = resolve_config(g);
      apply_model(cfg, model);
      cfg.spatial.runs = override_runs(cfg.spatial.runs, param, values);
      if (exp_trials > 0) cfg.spatial.trials = exp_trials;
      report_files(run_archived("spatial", cfg, out_dir(g, "spatial")));
    };
  });

  std::string responses_in, mode = "ensemble", clf;
  int organoid = 0, folds = 0;
  auto *classify = app.add_subcommand("classify", "Cross-validated letter classification");
  classify->add_option("--responses", responses_in, "responses.csv")->required();
  classify->add_option("--mode", mode, "single or ensemble");
  classify->add_option("--organoid", organoid, "Organoid index for single mode");
  classify->add_option("--clf", clf, "knn, svm or forest");
  classify->add_option("--folds", folds, "Cross-validation folds");
  classify->callback([&] { stage = "classify"; action = [&] { run_classify(g, responses_in, mode, organoid, clf, folds); }; });

  std::string noise, apply_to;
  int repeats = 0;
  auto *robust = app.add_subcommand("robustness", "Accuracy under channel noise");
  robust->add_option("--responses", responses_in, "responses.csv; runs the full pipeline when omitted");
  robust->add_option("--noise", noise, "all or a comma-separated list of kinds");
  robust->add_option("--repeats", repeats, "Noise seeds per kind");
  robust->add_option("--apply-to", apply_to, "all or test");
  robust->callback([&] { stage = "robustness"; action = [&] { run_robustness(g, responses_in, noise, repeats, apply_to); }; });

  auto *braille = app.add_subcommand("braille", "Full pipeline benchmark");
  braille->callback([&] {
    stage = "braille";
    action = [&] {
      const auto res = run_archived("braille", resolve_config(g), out_dir(g, "braille"));
      std::cout << res.summary.dump(2) << '\n';
    };
  });

  CLI11_PARSE(app, argc, argv);
  g.seed_set = seed_opt->count() > 0;

  std::string hash = "-";
  try {
    hash = config_hash(resolve_config(g));
    action();
  } catch (const StageError &e) {
    const auto &h = e.config_hash().empty() ? hash : e.config_hash();
    std::cerr << "biobraille: stage '" << e.stage() << "' failed (config " << h << "): " << e.what() << '\n';
    return 2;
  } catch (const std::exception &e) {
    std::cerr << "biobraille: stage '" << stage << "' failed (config " << hash << "): " << e.what() << '\n';
    return 2;
  }
  return 0;
}
