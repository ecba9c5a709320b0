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


#include <biobraille/reference.hpp>

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace biobraille::serial {

SilhouetteResult silhouette(std::span<const CACluster> clusters) {
  if (clusters.size() < 2) throw std::invalid_argument("silhouette needs at least two clusters");
  SilhouetteResult r;
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    const auto &own = clusters[c].points;
    if (own.empty()) throw std::invalid_argument("silhouette clusters must be nonempty");
    std::vector<double> scores;
    for (std::size_t i = 0; i < own.size(); ++i) {
      if (own.size() == 1) {
        scores.push_back(0.0);
        continue;
      }
      double a = 0.0;
      for (std::size_t j = 0; j < own.size(); ++j)
        if (j != i) a += distance(own[i], own[j]);
      a /= static_cast<double>(own.size() - 1);
      double b = std::numeric_limits<double>::infinity();
      for (std::size_t o = 0; o < clusters.size(); ++o) {
        if (o == c) continue;
        double s = 0.0;
        for (const auto &q : clusters[o].points) s += distance(own[i], q);
        b = std::min(b, s / static_cast<double>(clusters[o].points.size()));
      }
      const double d = std::max(a, b);
      scores.push_back(d > 0 ? (b - a) / d : 0.0);
    }
    r.medians.push_back(median(scores));
    r.scores.push_back(std::move(scores));
  }
  return r;
}

std::vector<SpikeTrain> stimulate_batch(const OrganoidModel &m, std::span<const StimPattern> patterns,
                                        const RecordingWindow &window, std::span<const std::uint64_t> seeds) {
  if (patterns.size() != seeds.size()) throw std::invalid_argument("one seed per pattern required");
  std::vector<SpikeTrain> out;
  out.reserve(patterns.size());
  for (std::size_t i = 0; i < patterns.size(); ++i) out.push_back(stimulate(m, patterns[i], window, seeds[i]));
  return out;
}

std::vector<RegionFeatureSet> extract_features_batch(std::span<const TactileEventStream> streams,
                                                     const RegionGrid &grid, std::int64_t window_us) {
  std::vector<RegionFeatureSet> out;
  out.reserve(streams.size());
  for (const auto &s : streams) out.push_back(extract_features(s, grid, window_us));
  return out;
}

std::vector<LabelledStream> generate_dataset(const SynthConfig &cfg, std::uint64_t master_seed) {
  std::vector<LabelledStream> out;
  for (const auto &l : dataset_labels(cfg)) out.push_back({l, generate_trial(l, cfg, trial_seed(master_seed, l))});
  return out;
}

std::vector<int> predict_all(const Classifier &clf, const FeatureMatrix &x) {
  std::vector<int> out;
  out.reserve(x.rows);
  for (std::size_t i = 0; i < x.rows; ++i) out.push_back(clf.predict(x.row(i)));
  return out;
}

std::vector<int> knn_predict(const FeatureMatrix &train, std::span<const int> labels, int num_classes, int k,
                             const FeatureMatrix &query) {
  if (k < 1 || static_cast<std::size_t>(k) > train.rows) throw std::invalid_argument("invalid k");
  std::vector<int> out;
  for (std::size_t q = 0; q < query.rows; ++q) {
    std::vector<std::pair<double, std::size_t>> d;
    for (std::size_t i = 0; i < train.rows; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < train.cols; ++j) {
        const double diff = query.at(q, j) - train.at(i, j);
        s += diff * diff;
      }
      d.emplace_back(s, i);
    }
    std::sort(d.begin(), d.end());
    std::vector<int> votes(static_cast<std::size_t>(num_classes), 0);
    for (int i = 0; i < k; ++i) ++votes[static_cast<std::size_t>(labels[d[static_cast<std::size_t>(i)].second])];
    out.push_back(static_cast<int>(std::max_element(votes.begin(), votes.end()) - votes.begin()));
  }
  return out;
}

} // namespace biobraille::serial
