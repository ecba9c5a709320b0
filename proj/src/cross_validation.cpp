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


#include <biobraille/analysis_metrics.hpp>
#include <biobraille/decode_classify.hpp>
#include <biobraille/rng.hpp>

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace biobraille {

ResponseVector decode(const TrialLabel &label, std::span<const SpikeTrain> trains, const RecordingWindow &readout) {
  ResponseVector r{label, {}};
  r.counts.reserve(trains.size() * kElectrodes);
  for (const auto &t : trains) {
    const auto c = channel_counts(t, readout.start_us, readout.end_us);
    r.counts.insert(r.counts.end(), c.begin(), c.end());
  }
  return r;
}

std::vector<ResponseVector> concatenate(std::span<const std::vector<ResponseVector>> parts) {
  if (parts.empty()) return {};
  std::vector<ResponseVector> out = parts.front();
  for (std::size_t p = 1; p < parts.size(); ++p) {
    if (parts[p].size() != out.size()) throw std::invalid_argument("concatenate: datasets differ in length");
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (!(parts[p][i].label == out[i].label)) throw std::invalid_argument("concatenate: labels differ");
      out[i].counts.insert(out[i].counts.end(), parts[p][i].counts.begin(), parts[p][i].counts.end());
    }
  }
  return out;
}

FeatureMatrix to_matrix(std::span<const ResponseVector> data) {
  if (data.empty()) return {};
  FeatureMatrix m(data.size(), data.front().counts.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (data[i].counts.size() != m.cols) throw std::invalid_argument("response vectors differ in dimension");
    std::copy(data[i].counts.begin(), data[i].counts.end(), m.row(i).begin());
  }
  return m;
}

std::vector<int> stratified_folds(std::span<const ResponseVector> data, int folds, std::uint64_t seed) {
  if (folds < 2) throw std::invalid_argument("cross-validation needs at least 2 folds");
  std::map<char, int> per_letter;
  for (const auto &r : data) ++per_letter[r.label.letter];
  for (const auto &[letter, n] : per_letter) {
    if (n < folds)
      throw std::invalid_argument(std::string("stratification impossible: letter ") + letter + " has " +
                                  std::to_string(n) + " samples for " + std::to_string(folds) + " folds");
  }

  std::map<std::pair<int, int>, std::vector<std::size_t>> strata;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto &l = data[i].label;
    strata[{l.letter_index(), l.depth_index()}].push_back(i);
  }
  std::vector<int> fold(data.size(), 0);
  int offset = 0;
  for (auto &[key, members] : strata) {
    Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(key.first), static_cast<std::uint64_t>(key.second + 1)}));
    std::shuffle(members.begin(), members.end(), rng);
    for (std::size_t i = 0; i < members.size(); ++i) fold[members[i]] = (offset + static_cast<int>(i)) % folds;
    offset = (offset + static_cast<int>(members.size())) % folds;
  }
  return fold;
}

double CVReport::pooled_accuracy() const {
  long hit = 0;
  for (std::size_t i = 0; i < confusion.size(); ++i) hit += confusion[i][i];
  return total > 0 ? static_cast<double>(hit) / static_cast<double>(total) : 0.0;
}

CVReport cross_validate(std::span<const ResponseVector> data, const CVOptions &opts,
                        std::optional<std::span<const ResponseVector>> test_rows) {
  if (data.empty()) throw std::invalid_argument("cross-validation on an empty dataset");
  if (test_rows && test_rows->size() != data.size())
    throw std::invalid_argument("test rows must align with the training data");
  const auto fold = stratified_folds(data, opts.folds, opts.seed);

  // Contiguous class indices over the letters present.
  std::vector<int> class_of_letter(kLetterCount, -1);
  std::vector<int> letter_of_class;
  for (const auto &r : data) class_of_letter[static_cast<std::size_t>(r.label.letter_index())] = 0;
  for (int l = 0; l < kLetterCount; ++l) {
    if (class_of_letter[static_cast<std::size_t>(l)] == 0) {
      class_of_letter[static_cast<std::size_t>(l)] = static_cast<int>(letter_of_class.size());
      letter_of_class.push_back(l);
    }
  }
  const int num_classes = static_cast<int>(letter_of_class.size());

  const FeatureMatrix all = to_matrix(data);
  const FeatureMatrix all_test = test_rows ? to_matrix(*test_rows) : FeatureMatrix{};
  const FeatureMatrix &test_source = test_rows ? all_test : all;

  CVReport rep;
  rep.classifier = to_string(opts.classifier.kind);
  rep.folds = opts.folds;
  rep.confusion.assign(kLetterCount, std::vector<long>(kLetterCount, 0));

  for (int f = 0; f < opts.folds; ++f) {
    std::vector<std::size_t> train_idx, test_idx;
    for (std::size_t i = 0; i < data.size(); ++i) (fold[i] == f ? test_idx : train_idx).push_back(i);

    FeatureMatrix xtr(train_idx.size(), all.cols), xte(test_idx.size(), all.cols);
    std::vector<int> ytr;
    for (std::size_t i = 0; i < train_idx.size(); ++i) {
      std::copy_n(all.row(train_idx[i]).begin(), all.cols, xtr.row(i).begin());
      ytr.push_back(class_of_letter[static_cast<std::size_t>(data[train_idx[i]].label.letter_index())]);
    }
    for (std::size_t i = 0; i < test_idx.size(); ++i) std::copy_n(test_source.row(test_idx[i]).begin(), all.cols, xte.row(i).begin());

    const auto scaler = Standardizer::fit(xtr);
    auto clf = make_classifier(opts.classifier);
    clf->fit(scaler.transform(xtr), ytr, num_classes);
    const auto pred = clf->predict_all(scaler.transform(xte));

    long hit = 0;
    for (std::size_t i = 0; i < test_idx.size(); ++i) {
      const int truth = data[test_idx[i]].label.letter_index();
      const int guess = letter_of_class[static_cast<std::size_t>(pred[i])];
      ++rep.confusion[static_cast<std::size_t>(truth)][static_cast<std::size_t>(guess)];
      hit += truth == guess;
    }
    rep.total += static_cast<long>(test_idx.size());
    rep.fold_accuracy.push_back(test_idx.empty() ? 0.0 : static_cast<double>(hit) / static_cast<double>(test_idx.size()));
  }
  rep.mean_accuracy = std::accumulate(rep.fold_accuracy.begin(), rep.fold_accuracy.end(), 0.0) / opts.folds;
  return rep;
}

} // namespace biobraille
