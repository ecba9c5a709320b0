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


// Acceptance suite. Prints one PASS/FAIL line per criterion; exit status is
// nonzero if any selected criterion fails. Usage: acceptance [id ...]

#include <biobraille/analysis_metrics.hpp>
#include <biobraille/classifiers.hpp>
#include <biobraille/experiments.hpp>
#include <biobraille/noise_harness.hpp>
#include <biobraille/organoid_sim.hpp>
#include <biobraille/pipeline.hpp>
#include <biobraille/reference.hpp>
#include <biobraille/rng.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

using namespace biobraille;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char *f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

ExperimentConfig default_config(std::uint64_t seed = 1) {
  auto cfg = ExperimentConfig::defaults();
  cfg.master_seed = seed;
  return cfg;
}

CVOptions cv_for(const ExperimentConfig &cfg) {
  CVOptions cv;
  cv.folds = cfg.folds;
  cv.seed = stage_seed(cfg, "folds");
  cv.classifier = cfg.classifier;
  return cv;
}

// 1. Center of activity against a direct long-double evaluation.
Outcome c1() {
  const auto t0 = Clock::now();
  Rng rng(101);
  std::uniform_real_distribution<double> coord(0.0, 1.0);
  std::uniform_int_distribution<int> count(0, 60);
  std::bernoulli_distribution silent(0.25);
  double worst = 0.0;
  for (int inst = 0; inst < 1000; ++inst) {
    ElectrodeLayout layout;
    for (auto &p : layout.coords) p = {coord(rng), coord(rng)};
    std::vector<double> f(kElectrodes);
    for (auto &x : f) x = silent(rng) ? 0.0 : count(rng);
    if (std::accumulate(f.begin(), f.end(), 0.0) == 0.0) f[static_cast<std::size_t>(inst % kElectrodes)] = 1.0;
    long double sx = 0, sy = 0, tot = 0;
    for (int k = 0; k < kElectrodes; ++k) {
      sx += static_cast<long double>(f[k]) * layout.coords[k].x;
      sy += static_cast<long double>(f[k]) * layout.coords[k].y;
      tot += f[k];
    }
    const double ox = static_cast<double>(sx / tot), oy = static_cast<double>(sy / tot);
    const auto c = center_of_activity(f, layout);
    const double scale = std::max({std::abs(ox), std::abs(oy), 1e-300});
    worst = std::max(worst, std::max(std::abs(c.x - ox), std::abs(c.y - oy)) / scale);
  }
  bool zero_raises = false;
  try {
    const std::vector<double> z(kElectrodes, 0.0);
    center_of_activity(z, ElectrodeLayout::grid_2x4());
  } catch (const UndefinedCenterError &) {
    zero_raises = true;
  }
  const double dt = seconds_since(t0);
  return {worst <= 1e-12 && zero_raises && dt < 1.0,
          fmt("max rel err %.2e over 1000 instances, all-zero raises=%s, %.3f s (limits 1e-12, 1 s)", worst,
              zero_raises ? "yes" : "no", dt)};
}

// 2. Silhouette against an all-pairs oracle.
std::vector<std::vector<double>> silhouette_oracle(const std::vector<std::vector<Point2>> &c) {
  std::vector<Point2> pts;
  std::vector<std::size_t> owner;
  for (std::size_t k = 0; k < c.size(); ++k)
    for (const auto &p : c[k]) {
      pts.push_back(p);
      owner.push_back(k);
    }
  const std::size_t n = pts.size();
  std::vector<double> dist(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) dist[i * n + j] = std::hypot(pts[i].x - pts[j].x, pts[i].y - pts[j].y);
  std::vector<std::vector<double>> out(c.size());
  for (std::size_t i = 0; i < n; ++i) {
    const auto k = owner[i];
    if (c[k].size() == 1) {
      out[k].push_back(0.0);
      continue;
    }
    std::vector<double> sum(c.size(), 0.0);
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) sum[owner[j]] += dist[i * n + j];
    const double a = sum[k] / static_cast<double>(c[k].size() - 1);
    double b = INFINITY;
    for (std::size_t o = 0; o < c.size(); ++o)
      if (o != k) b = std::min(b, sum[o] / static_cast<double>(c[o].size()));
    const double m = std::max(a, b);
    out[k].push_back(m > 0 ? (b - a) / m : 0.0);
  }
  return out;
}

Outcome c2() {
  const auto t0 = Clock::now();
  Rng rng(202);
  std::uniform_int_distribution<int> size(2, 30);
  std::uniform_real_distribution<double> centre(0.0, 1.0);
  std::normal_distribution<double> spread(0.0, 0.15);
  std::uniform_int_distribution<int> grid(0, 4);
  int mismatches = 0;
  for (int inst = 0; inst < 100; ++inst) {
    std::vector<CACluster> clusters(3);
    std::vector<std::vector<Point2>> raw(3);
    const bool lattice = inst % 4 == 0; // coarse lattice points produce distance ties
    for (int k = 0; k < 3; ++k) {
      const double cx = centre(rng), cy = centre(rng);
      const int n = size(rng);
      for (int i = 0; i < n; ++i) {
        Point2 p = lattice ? Point2{grid(rng) * 0.25, grid(rng) * 0.25} : Point2{cx + spread(rng), cy + spread(rng)};
        clusters[k].points.push_back(p);
        raw[k].push_back(p);
      }
    }
    const auto got = silhouette(clusters);
    const auto want = silhouette_oracle(raw);
    for (int k = 0; k < 3; ++k) {
      if (got.scores[k] != want[k]) ++mismatches;
      std::vector<double> s = want[k];
      std::sort(s.begin(), s.end());
      const double med = s.size() % 2 ? s[s.size() / 2] : 0.5 * (s[s.size() / 2 - 1] + s[s.size() / 2]);
      if (got.medians[k] != med) ++mismatches;
    }
  }
  const double dt = seconds_since(t0);
  return {mismatches == 0 && dt < 5.0,
          fmt("%d mismatching score vectors or medians over 100 instances, %.3f s (limit 5 s)", mismatches, dt)};
}

double pearson(const std::vector<double> &x, const std::vector<double> &y) {
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n, my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

// 3. Sweep trends on the default model.
Outcome c3() {
  const auto t0 = Clock::now();
  const auto cfg = default_config();
  const auto model = experiment_model(cfg);
  const auto seed = stage_seed(cfg, "sweep");
  auto sweep = [&](StimParam p, std::vector<double> values) {
    SweepSpec s;
    s.param = p;
    s.values = std::move(values);
    s.trials = 10;
    s.seed = seed;
    return run_sweep(model, s);
  };
  std::vector<double> pulses(10);
  std::iota(pulses.begin(), pulses.end(), 1.0);
  const auto tp = sweep(StimParam::pulses, pulses);
  const double r = pearson(tp.values, tp.mean_total);

  const auto base = sweep(StimParam::pulses, {0});
  const double base_mean = base.mean_total[0];
  const double base_se = base.sd_total[0] / std::sqrt(static_cast<double>(base.samples_per_value));
  std::vector<double> amps;
  for (int a = 0; a <= 20; a += 2) amps.push_back(a);
  const auto ta = sweep(StimParam::amplitude, amps);
  bool low_ok = true, high_ok = true;
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if (amps[i] <= 2) low_ok = low_ok && std::abs(ta.mean_total[i] - base_mean) <= 3 * std::max(base_se, 1e-12);
    if (amps[i] >= 8) high_ok = high_ok && ta.mean_total[i] > base_mean;
  }

  std::vector<double> delays;
  for (int d = 0; d <= 4000; d += 500) delays.push_back(d);
  const auto td = sweep(StimParam::delay, delays);
  const auto [lo, hi] = std::minmax_element(td.mean_total.begin(), td.mean_total.end());
  const double grand = std::accumulate(td.mean_total.begin(), td.mean_total.end(), 0.0) / td.mean_total.size();
  const double spread = (*hi - *lo) / grand;
  const double dt = seconds_since(t0);
  return {r >= 0.95 && low_ok && high_ok && spread <= 0.10 && dt < 30.0,
          fmt("pulses r=%.4f (>=0.95); amplitude 0-2 uA at baseline=%s, >=8 uA above=%s; delay spread %.1f%% of "
              "mean (<=10%%); %.2f s",
              r, low_ok ? "yes" : "no", high_ok ? "yes" : "no", 100 * spread, dt)};
}

// 4. PSTH shape.
Outcome c4() {
  const auto t0 = Clock::now();
  const auto cfg = default_config();
  const auto model = experiment_model(cfg);
  PsthSpec spec;
  spec.trials = 100;
  spec.seed = stage_seed(cfg, "temporal");
  auto run = [&](int pulses) {
    ElectrodeStim s = kSweepDefaults;
    s.num_pulses = pulses;
    return psth(model, StimPattern::uniform(s), spec);
  };
  const auto one = run(1), ten = run(10);
  auto bin = [](const Psth &h, std::int64_t start_ms) {
    for (std::size_t i = 0; i < h.bin_start_us.size(); ++i)
      if (h.bin_start_us[i] == start_ms * 1000) return h.mean_count[i];
    return std::nan("");
  };
  double worst_one = 0, worst_ten = 0;
  for (std::size_t i = 0; i < one.bin_start_us.size(); ++i) {
    if (one.bin_start_us[i] >= 50'000) worst_one = std::max(worst_one, one.mean_count[i] / one.pre_stimulus_mean());
    if (ten.bin_start_us[i] >= 150'000) worst_ten = std::max(worst_ten, ten.mean_count[i] / ten.pre_stimulus_mean());
  }
  const double e0 = bin(ten, 0) / ten.pre_stimulus_mean(), e50 = bin(ten, 50) / ten.pre_stimulus_mean();
  const double dt = seconds_since(t0);
  return {worst_one <= 2.0 && e0 >= 3.0 && e50 >= 3.0 && worst_ten <= 2.0 && dt < 30.0,
          fmt("1 pulse: max bin from +50 ms = %.2fx pre (<=2); 10 pulses: [0,50)=%.1fx, [50,100)=%.1fx (>=3), max "
              "bin from +150 ms = %.2fx (<=2); %.2f s",
              worst_one, e0, e50, worst_ten, dt)};
}

// 5. Spatial metrics.
Outcome c5() {
  const auto t0 = Clock::now();
  const auto cfg = default_config();
  const auto model = experiment_model(cfg);
  SpatialSpec spec;
  spec.param = StimParam::pulses;
  spec.values = {2, 4};
  spec.trials = 100;
  spec.seed = stage_seed(cfg, "spatial");
  const auto r = run_spatial(model, spec);
  auto med = [](const std::array<double, kElectrodes> &a) { return median({a.begin(), a.end()}); };
  auto mean = [](const std::array<double, kElectrodes> &a) { return std::accumulate(a.begin(), a.end(), 0.0) / a.size(); };
  const double s2 = med(r.table.silhouette[0]), s4 = med(r.table.silhouette[1]);
  const double sh2 = mean(r.table.shift_um[0]), sh4 = mean(r.table.shift_um[1]);

  SpatialSpec def = spec;
  def.values = {static_cast<double>(kSpatialDefaults.num_pulses)};
  const auto d = run_spatial(model, def);
  int separated = 0, pairs = 0;
  double worst = INFINITY;
  for (int i = 0; i < kElectrodes; ++i) {
    for (int j = i + 1; j < kElectrodes; ++j) {
      const auto &a = d.clusters[0][i].points, &b = d.clusters[0][j].points;
      const double gap = distance(centroid(a), centroid(b));
      const double se = bootstrap_centroid_distance_se(a, b, 1000, derive_seed(spec.seed, {0xb007, (std::uint64_t)i, (std::uint64_t)j}));
      worst = std::min(worst, gap / se);
      separated += gap > 3 * se;
      ++pairs;
    }
  }
  const double dt = seconds_since(t0);
  const bool ok = s2 > 0 && s4 >= 1.5 * s2 && sh4 > sh2 && separated == pairs && dt < 120.0;
  return {ok, fmt("median silhouette 2 pulses %.3f, 4 pulses %.3f (ratio %.2f, >=1.5); mean shift %.2f -> %.2f um; "
                  "%d/%d electrode pairs separated by >3 bootstrap SE (min %.1f SE); %.2f s",
                  s2, s4, s4 / s2, sh2, sh4, separated, pairs, worst, dt)};
}

// 6. Braille benchmark over five master seeds.
Outcome c6(std::string &extra) {
  const auto t0 = Clock::now();
  double min_single = 1.0, gap_sum = 0, svm_sum = 0, knn_sum = 0, rf_sum = 0, single_sum = 0;
  const int seeds = 5;
  std::string per_seed;
  for (int s = 1; s <= seeds; ++s) {
    const auto cfg = default_config(static_cast<std::uint64_t>(s));
    const auto data = build_braille_data(cfg.pipeline, cfg.master_seed);
    const auto cv = cv_for(cfg);
    const auto r = run_braille_benchmark(data, cv);
    double best = 0;
    for (const auto &x : r.single) {
      best = std::max(best, x.mean_accuracy);
      min_single = std::min(min_single, x.mean_accuracy);
      single_sum += x.mean_accuracy / r.single.size();
    }
    gap_sum += r.ensemble.mean_accuracy - best;
    svm_sum += r.ensemble.mean_accuracy;
    CVOptions other = cv;
    other.classifier.kind = ClassifierKind::knn;
    knn_sum += cross_validate(data.ensemble, other).mean_accuracy;
    other.classifier.kind = ClassifierKind::forest;
    rf_sum += cross_validate(data.ensemble, other).mean_accuracy;
    per_seed += fmt(" seed %d: best single %.3f ensemble %.3f;", s, best, r.ensemble.mean_accuracy);
  }
  const double dt = seconds_since(t0);
  const double gap = gap_sum / seeds, svm = svm_sum / seeds, knn = knn_sum / seeds, rf = rf_sum / seeds;
  const bool a = min_single > 0.38, b = gap >= 0.05;
  const bool c_holds = svm >= knn && svm >= rf;
  extra = fmt("6c: ensemble mean accuracy svm %.3f, knn %.3f, forest %.3f -> ", svm, knn, rf) +
          (c_holds ? std::string("svm highest") : std::string("DEVIATION: svm is not the highest"));
  return {a && b && dt < 600.0,
          fmt("6a min single-organoid svm %.3f (>0.38); 6b mean ensemble gain over best single %.1f pp (>=5); mean "
              "single %.3f, mean ensemble %.3f; %.1f s;",
              min_single, 100 * gap, single_sum / seeds, svm, dt) +
              per_seed};
}

// 7. Noise robustness.
Outcome c7() {
  const auto t0 = Clock::now();
  const auto cfg = default_config();
  const auto data = build_braille_data(cfg.pipeline, cfg.master_seed);
  RobustnessOptions o;
  o.cv = cv_for(cfg);
  o.noise = cfg.noise;
  o.repeats = 10;
  o.seed = stage_seed(cfg, "noise");
  const auto rep = robustness_report(data.single, data.ensemble, o);
  bool ens_smaller = true, band = true;
  std::string d;
  for (auto k : kAllNoiseKinds) {
    const double s = rep.mean_degradation("single", k), e = rep.mean_degradation("ensemble", k);
    ens_smaller = ens_smaller && e < s;
    d += fmt(" %s single %.1f / ensemble %.1f pp;", to_string(k).c_str(), 100 * s, 100 * e);
  }
  for (const auto &r : rep.rows)
    if (r.mode == "single") band = band && r.degradation() >= 0.0 && r.degradation() <= 0.30;
  const double structural = 0.5 * (rep.mean_degradation("single", NoiseKind::missing) +
                                   rep.mean_degradation("single", NoiseKind::outliers));
  const double additive = 0.5 * (rep.mean_degradation("single", NoiseKind::gaussian) +
                                 rep.mean_degradation("single", NoiseKind::uniform));
  const double dt = seconds_since(t0);
  return {ens_smaller && band && structural >= additive && dt < 600.0,
          fmt("ensemble < single for every kind=%s; every single row within 0-30 pp=%s; missing/outliers %.1f pp >= "
              "gaussian/uniform %.1f pp; %.1f s;",
              ens_smaller ? "yes" : "no", band ? "yes" : "no", 100 * structural, 100 * additive, dt) +
              d};
}

// 8. Determinism of archived runs.
std::string slurp(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome c8() {
  const auto t0 = Clock::now();
  const fs::path root = fs::temp_directory_path() / ("biobraille_acceptance_" + std::to_string(::getpid()));
  fs::remove_all(root);
  auto cfg = default_config(7);
  cfg.noise_repeats = 2;
  const std::vector<std::string> stages = {"sweep", "temporal", "spatial", "braille", "robustness"};
  int tables = 0, differing = 0;
  for (const auto &stage : stages) {
    const auto a = run_archived(stage, cfg, root / "a" / stage);
    // Second run reads the archived config back from disk.
    const auto archived = load_config(root / "a" / stage / "config.json");
    const auto b = run_archived(stage, archived, root / "b" / stage);
    if (config_hash(archived) != config_hash(cfg)) ++differing;
    for (const auto &[name, hash] : a.files) {
      ++tables;
      const auto it = b.files.find(name);
      if (it == b.files.end() || it->second != hash ||
          slurp(root / "a" / stage / name) != slurp(root / "b" / stage / name))
        ++differing;
    }
    const auto rec = ResultArchive(root / "b" / stage / "archive.jsonl").records();
    if (rec.size() != 1 || rec[0].at("config_hash") != config_hash(cfg)) ++differing;
  }
  fs::remove_all(root);
  const double dt = seconds_since(t0);
  return {differing == 0 && tables > 0,
          fmt("%d result tables across 5 commands, %d differences after rerunning from the archived config; %.1f s",
              tables, differing, dt)};
}

// 9. Noise-model exactness.
Outcome c9() {
  Rng rng(909);
  std::uniform_int_distribution<int> count(1, 80);
  std::vector<ResponseVector> data(1000);
  for (std::size_t i = 0; i < data.size(); ++i) {
    data[i].label = {static_cast<char>('A' + i % 26), 0.0, static_cast<int>(i % 10)};
    for (int k = 0; k < kElectrodes; ++k) data[i].counts.push_back(count(rng));
  }
  bool ok = true;
  std::string d;
  for (auto kind : {NoiseKind::missing, NoiseKind::outliers}) {
    NoiseSpec spec;
    spec.kind = kind;
    spec.seed = 99;
    const auto out = apply_noise(data, spec);
    std::vector<bool> chosen(kElectrodes, false);
    for (int c : out.channels) chosen[static_cast<std::size_t>(c)] = true;
    ok = ok && out.channels.size() == 4;
    for (int k = 0; k < kElectrodes; ++k) {
      int hit = 0, other = 0;
      for (std::size_t i = 0; i < data.size(); ++i) {
        const double before = data[i].counts[k], after = out.data[i].counts[k];
        if (!chosen[k]) {
          other += std::memcmp(&before, &after, sizeof(double)) != 0;
          continue;
        }
        if (kind == NoiseKind::missing ? after == 0.0 : after == 3.0 * before) ++hit;
        else if (after != before) ++other;
      }
      if (chosen[k] && hit != 400) ok = false;
      if (other != 0) ok = false;
      if (chosen[k]) d += fmt(" %s ch%d: %d", to_string(kind).c_str(), k, hit);
    }
  }
  return {ok, "exactly 400 of 1000 samples hit on each of 4 chosen channels, others bit-identical;" + d};
}

// 10. Classifier oracles.
Outcome c10() {
  Rng rng(1010);
  std::normal_distribution<double> g(0.0, 1.0);
  std::uniform_int_distribution<int> cls(0, 3);
  FeatureMatrix train(200, 5), query(100, 5);
  std::vector<int> y(200);
  for (std::size_t i = 0; i < 200; ++i) {
    y[i] = cls(rng);
    for (std::size_t j = 0; j < 5; ++j) train.at(i, j) = g(rng) + (j == static_cast<std::size_t>(y[i]) ? 1.5 : 0.0);
  }
  for (auto &v : query.data) v = g(rng);
  int knn_mismatch = 0;
  for (int k : {1, 5}) {
    KnnClassifier knn(k);
    knn.fit(train, y, 4);
    for (std::size_t q = 0; q < query.rows; ++q) {
      std::vector<std::pair<double, std::size_t>> d;
      for (std::size_t i = 0; i < train.rows; ++i) {
        double s = 0;
        for (std::size_t j = 0; j < 5; ++j) s += (query.at(q, j) - train.at(i, j)) * (query.at(q, j) - train.at(i, j));
        d.emplace_back(s, i);
      }
      std::sort(d.begin(), d.end());
      int votes[4] = {0, 0, 0, 0};
      for (int i = 0; i < k; ++i) ++votes[y[d[static_cast<std::size_t>(i)].second]];
      const int want = static_cast<int>(std::max_element(votes, votes + 4) - votes);
      knn_mismatch += knn.predict(query.row(q)) != want;
    }
  }

  FeatureMatrix sep(120, 2);
  std::vector<int> ys(120);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (std::size_t i = 0; i < 120; ++i) {
    ys[i] = static_cast<int>(i % 2);
    const double side = ys[i] ? 1.0 : -1.0;
    sep.at(i, 0) = u(rng);
    sep.at(i, 1) = side * (0.2 + std::abs(u(rng))) + 0.3 * sep.at(i, 0);
  }
  const auto scaler = Standardizer::fit(sep);
  const auto xs = scaler.transform(sep);
  LinearSvm svm{SvmParams{}};
  svm.fit(xs, ys, 2);
  const auto pred = svm.predict_all(xs);
  int correct = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) correct += pred[i] == ys[i];
  return {knn_mismatch == 0 && correct == 120,
          fmt("kNN (k=1,5) vs exhaustive search on 200 training vectors: %d mismatches over 200 queries; linear SVM "
              "training accuracy on separable toy set %d/120 with %d epochs",
              knn_mismatch, correct, SvmParams{}.epochs)};
}

} // namespace

int main(int argc, char **argv) {
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));
  if (selected.empty()) selected = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};

  bool all = true;
  for (int id : selected) {
    Outcome o;
    std::string extra;
    const char *name = "";
    try {
      switch (id) {
      case 1: name = "center-of-activity oracle"; o = c1(); break;
      case 2: name = "silhouette oracle"; o = c2(); break;
      case 3: name = "sweep trends"; o = c3(); break;
      case 4: name = "PSTH shape"; o = c4(); break;
      case 5: name = "spatial metrics"; o = c5(); break;
      case 6: name = "braille benchmark"; o = c6(extra); break;
      case 7: name = "noise robustness"; o = c7(); break;
      case 8: name = "determinism"; o = c8(); break;
      case 9: name = "noise-model exactness"; o = c9(); break;
      case 10: name = "classifier oracles"; o = c10(); break;
      default: std::printf("FAIL [%d] unknown criterion\n", id); all = false; continue;
      }
    } catch (const std::exception &e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s [%d] %s: %s\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str());
    if (!extra.empty()) std::printf("     [%d] %s\n", id, extra.c_str());
    std::fflush(stdout);
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
