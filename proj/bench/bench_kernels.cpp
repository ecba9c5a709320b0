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


// Times each OpenMP kernel against its serial reference and checks that the
// two produce identical results. Usage: bench_kernels [repeats]

#include <biobraille/analysis_metrics.hpp>
#include <biobraille/pipeline.hpp>
#include <biobraille/reference.hpp>
#include <biobraille/rng.hpp>

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <limits>

using namespace biobraille;

namespace {

double best_of(int repeats, const std::function<void()> &fn) {
  double best = std::numeric_limits<double>::infinity();
  for (int r = 0; r < repeats; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    best = std::min(best, std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

bool all_match = true;

template <class A, class B>
void report(const char *name, int repeats, A parallel, B serial) {
  decltype(parallel()) p, s;
  const double tp = best_of(repeats, [&] { p = parallel(); });
  const double ts = best_of(repeats, [&] { s = serial(); });
  const bool same = p == s;
  all_match = all_match && same;
  std::printf("%-22s %10.2f %10.2f %8.2fx  %s\n", name, ts, tp, ts / tp, same ? "identical" : "MISMATCH");
}

} // namespace

int main(int argc, char **argv) {
  const int repeats = argc > 1 ? std::max(1, std::atoi(argv[1])) : 3;
  std::printf("threads: %d, best of %d\n", omp_get_max_threads(), repeats);
  std::printf("%-22s %10s %10s %9s\n", "kernel", "serial ms", "omp ms", "speedup");

  SynthConfig synth;
  synth.trials = 2; // 260 trials
  report("generate_dataset", repeats, [&] { return generate_dataset(synth, 1); },
         [&] { return serial::generate_dataset(synth, 1); });

  const auto data = generate_dataset(synth, 1);
  std::vector<TactileEventStream> streams;
  for (const auto &d : data) streams.push_back(d.stream);
  const RegionGrid grid;
  report("extract_features", repeats, [&] { return extract_features_batch(streams, grid); },
         [&] { return serial::extract_features_batch(streams, grid); });

  const auto model = build_organoid(7);
  std::vector<StimPattern> patterns;
  std::vector<std::uint64_t> seeds;
  for (int i = 0; i < 4000; ++i) {
    patterns.push_back(StimPattern::uniform({1 + i % 10, 4.0 + i % 17, 50.0 + i % 251, 0.0}));
    seeds.push_back(derive_seed(3, {static_cast<std::uint64_t>(i)}));
  }
  const RecordingWindow window{0, 500'000};
  report("stimulate_batch", repeats, [&] { return stimulate_batch(model, patterns, window, seeds); },
         [&] { return serial::stimulate_batch(model, patterns, window, seeds); });

  Rng rng(5);
  std::normal_distribution<double> g(0.0, 0.2);
  std::vector<CACluster> clusters(kElectrodes);
  for (int e = 0; e < kElectrodes; ++e)
    for (int i = 0; i < 100; ++i) clusters[e].points.push_back({e * 0.1 + g(rng), g(rng)});
  auto scores = [](const SilhouetteResult &r) { return r.scores; };
  report("silhouette", repeats, [&] { return scores(silhouette(clusters)); },
         [&] { return scores(serial::silhouette(clusters)); });

  FeatureMatrix train(1040, 24), query(260, 24);
  std::vector<int> labels(1040);
  for (auto &v : train.data) v = g(rng);
  for (auto &v : query.data) v = g(rng);
  for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = static_cast<int>(i % 26);
  KnnClassifier knn(5);
  knn.fit(train, labels, 26);
  report("knn_predict", repeats, [&] { return knn.predict_all(query); },
         [&] { return serial::knn_predict(train, labels, 26, 5, query); });

  return all_match ? 0 : 1;
}
