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


#include <biobraille/classifiers.hpp>
#include <biobraille/rng.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace biobraille {

Standardizer Standardizer::fit(const FeatureMatrix &x) {
  Standardizer s;
  s.mean.assign(x.cols, 0.0);
  s.scale.assign(x.cols, 1.0);
  if (x.rows == 0) return s;
  for (std::size_t i = 0; i < x.rows; ++i) {
    for (std::size_t j = 0; j < x.cols; ++j) s.mean[j] += x.at(i, j);
  }
  for (double &m : s.mean) m /= static_cast<double>(x.rows);
  std::vector<double> ss(x.cols, 0.0);
  for (std::size_t i = 0; i < x.rows; ++i) {
    for (std::size_t j = 0; j < x.cols; ++j) {
      const double d = x.at(i, j) - s.mean[j];
      ss[j] += d * d;
    }
  }
  for (std::size_t j = 0; j < x.cols; ++j) {
    const double sd = std::sqrt(ss[j] / static_cast<double>(x.rows));
    s.scale[j] = sd > 0 ? sd : 1.0;
  }
  return s;
}

FeatureMatrix Standardizer::transform(const FeatureMatrix &x) const {
  if (x.cols != mean.size()) throw std::invalid_argument("standardizer dimension mismatch");
  FeatureMatrix out(x.rows, x.cols);
  for (std::size_t i = 0; i < x.rows; ++i) {
    for (std::size_t j = 0; j < x.cols; ++j) out.at(i, j) = (x.at(i, j) - mean[j]) / scale[j];
  }
  return out;
}

// ---------------------------------------------------------------------------

std::vector<int> Classifier::predict_all(const FeatureMatrix &x) const {
  require_trained(x.cols);
  std::vector<int> out(x.rows);
  const auto n = static_cast<std::ptrdiff_t>(x.rows);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = predict(x.row(static_cast<std::size_t>(i)));
  return out;
}

void Classifier::check_training_set(const FeatureMatrix &x, std::span<const int> y, int num_classes) const {
  if (num_classes < 1) throw std::invalid_argument("need at least one class");
  if (x.rows == 0 || x.cols == 0) throw std::invalid_argument("empty training set");
  if (y.size() != x.rows) throw std::invalid_argument("one label per training row required");
  std::vector<int> seen(static_cast<std::size_t>(num_classes), 0);
  for (int label : y) {
    if (label < 0 || label >= num_classes) throw std::invalid_argument("label outside [0, num_classes)");
    ++seen[static_cast<std::size_t>(label)];
  }
  for (int c = 0; c < num_classes; ++c) {
    if (seen[static_cast<std::size_t>(c)] == 0)
      throw std::invalid_argument("class " + std::to_string(c) + " has no training examples");
  }
}

void Classifier::require_trained(std::size_t dim) const {
  if (!trained()) throw std::logic_error(name() + ": predict called before fit");
  if (dim != dim_) throw std::invalid_argument(name() + ": feature dimension mismatch");
}

namespace {

int vote(const std::vector<int> &counts) {
  // max_element returns the first maximum, i.e. the smallest class on ties
  return static_cast<int>(std::max_element(counts.begin(), counts.end()) - counts.begin());
}

} // namespace

// ---- kNN --------------------------------------------------------------------

void KnnClassifier::fit(const FeatureMatrix &x, std::span<const int> y, int num_classes) {
  check_training_set(x, y, num_classes);
  if (k_ < 1) throw std::invalid_argument("knn: k must be at least 1");
  if (static_cast<std::size_t>(k_) > x.rows)
    throw std::invalid_argument("knn: k = " + std::to_string(k_) + " exceeds training size " + std::to_string(x.rows));
  train_ = x;
  labels_.assign(y.begin(), y.end());
  dim_ = x.cols;
  num_classes_ = num_classes;
}

std::vector<std::size_t> KnnClassifier::neighbours(std::span<const double> x) const {
  require_trained(x.size());
  std::vector<std::pair<double, std::size_t>> d(train_.rows);
  for (std::size_t i = 0; i < train_.rows; ++i) {
    const auto r = train_.row(i);
    double s = 0.0;
    for (std::size_t j = 0; j < r.size(); ++j) {
      const double diff = r[j] - x[j];
      s += diff * diff;
    }
    d[i] = {s, i};
  }
  const auto k = static_cast<std::ptrdiff_t>(k_);
  std::partial_sort(d.begin(), d.begin() + k, d.end());
  std::vector<std::size_t> out;
  out.reserve(static_cast<std::size_t>(k_));
  for (std::ptrdiff_t i = 0; i < k; ++i) out.push_back(d[static_cast<std::size_t>(i)].second);
  return out;
}

int KnnClassifier::predict(std::span<const double> x) const {
  std::vector<int> counts(static_cast<std::size_t>(num_classes_), 0);
  for (std::size_t i : neighbours(x)) ++counts[static_cast<std::size_t>(labels_[i])];
  return vote(counts);
}

// ---- linear SVM -------------------------------------------------------------

void LinearSvm::fit(const FeatureMatrix &x, std::span<const int> y, int num_classes) {
  check_training_set(x, y, num_classes);
  if (params_.epochs < 1 || !(params_.lambda > 0) || !(params_.eta0 > 0))
    throw std::invalid_argument("svm: epochs, lambda and eta0 must be positive");
  const std::size_t n = x.rows, d = x.cols;

  std::vector<std::vector<std::size_t>> order(static_cast<std::size_t>(params_.epochs));
  for (int e = 0; e < params_.epochs; ++e) {
    auto &o = order[static_cast<std::size_t>(e)];
    o.resize(n);
    std::iota(o.begin(), o.end(), std::size_t{0});
    Rng rng(derive_seed(params_.seed, {static_cast<std::uint64_t>(e)}));
    std::shuffle(o.begin(), o.end(), rng);
  }

  weights_.assign(static_cast<std::size_t>(num_classes), std::vector<double>(d, 0.0));
  bias_.assign(static_cast<std::size_t>(num_classes), 0.0);
  const int average_from = params_.epochs / 2;

#pragma omp parallel for schedule(dynamic, 1)
  for (int c = 0; c < num_classes; ++c) {
    const auto npos = static_cast<double>(std::count(y.begin(), y.end(), c));
    const double nneg = static_cast<double>(n) - npos;
    const double wpos = params_.balanced ? static_cast<double>(n) / (2.0 * npos) : 1.0;
    const double wneg = params_.balanced && nneg > 0 ? static_cast<double>(n) / (2.0 * nneg) : 1.0;

    std::vector<double> w(d, 0.0), wsum(d, 0.0);
    double b = 0.0, bsum = 0.0;
    std::size_t averaged = 0;
    std::uint64_t t = 0;
    for (int e = 0; e < params_.epochs; ++e) {
      for (std::size_t i : order[static_cast<std::size_t>(e)]) {
        ++t;
        const double eta = params_.eta0 / (1.0 + params_.eta0 * params_.lambda * static_cast<double>(t));
        const auto xi = x.row(i);
        const double yi = y[i] == c ? 1.0 : -1.0;
        const double cw = yi > 0 ? wpos : wneg;
        double score = b;
        for (std::size_t j = 0; j < d; ++j) score += w[j] * xi[j];
        const double shrink = 1.0 - eta * params_.lambda;
        for (double &wj : w) wj *= shrink;
        if (yi * score < 1.0) {
          for (std::size_t j = 0; j < d; ++j) w[j] += eta * cw * yi * xi[j];
          b += eta * cw * yi;
        }
        if (e >= average_from) {
          for (std::size_t j = 0; j < d; ++j) wsum[j] += w[j];
          bsum += b;
          ++averaged;
        }
      }
    }
    auto &wc = weights_[static_cast<std::size_t>(c)];
    for (std::size_t j = 0; j < d; ++j) wc[j] = wsum[j] / static_cast<double>(averaged);
    bias_[static_cast<std::size_t>(c)] = bsum / static_cast<double>(averaged);
  }
  dim_ = d;
  num_classes_ = num_classes;
}

std::vector<double> LinearSvm::decision(std::span<const double> x) const {
  require_trained(x.size());
  std::vector<double> s(weights_.size());
  for (std::size_t c = 0; c < weights_.size(); ++c) {
    double v = bias_[c];
    for (std::size_t j = 0; j < x.size(); ++j) v += weights_[c][j] * x[j];
    s[c] = v;
  }
  return s;
}

int LinearSvm::predict(std::span<const double> x) const {
  const auto s = decision(x);
  return static_cast<int>(std::max_element(s.begin(), s.end()) - s.begin());
}

// ---- random forest ----------------------------------------------------------

namespace {

struct TreeBuilder {
  const FeatureMatrix &x;
  std::span<const int> y;
  int num_classes;
  const ForestParams &params;
  int max_features;
  Rng rng;
  RandomForest::Tree tree;
  std::vector<std::pair<double, int>> scratch;

  int majority(const std::vector<std::size_t> &idx, std::size_t begin, std::size_t end, bool &pure) const {
    std::vector<int> counts(static_cast<std::size_t>(num_classes), 0);
    for (std::size_t i = begin; i < end; ++i) ++counts[static_cast<std::size_t>(y[idx[i]])];
    pure = std::count_if(counts.begin(), counts.end(), [](int c) { return c > 0; }) <= 1;
    return vote(counts);
  }

  int build(std::vector<std::size_t> &idx, std::size_t begin, std::size_t end, int depth) {
    bool pure = false;
    const int node = static_cast<int>(tree.size());
    tree.push_back({});
    tree[static_cast<std::size_t>(node)].label = majority(idx, begin, end, pure);
    const std::size_t n = end - begin;
    if (pure || depth >= params.max_depth || n < static_cast<std::size_t>(params.min_samples_split)) return node;

    std::vector<int> features(x.cols);
    std::iota(features.begin(), features.end(), 0);
    for (int i = 0; i < max_features; ++i) {
      std::uniform_int_distribution<int> pick(i, static_cast<int>(x.cols) - 1);
      std::swap(features[static_cast<std::size_t>(i)], features[static_cast<std::size_t>(pick(rng))]);
    }

    std::vector<double> total(static_cast<std::size_t>(num_classes), 0.0);
    for (std::size_t i = begin; i < end; ++i) total[static_cast<std::size_t>(y[idx[i]])] += 1.0;
    double total_sq = 0.0;
    for (double c : total) total_sq += c * c;
    const double nn = static_cast<double>(n);
    const double parent = 1.0 - total_sq / (nn * nn);

    double best = parent - 1e-12;
    int best_feature = -1;
    double best_threshold = 0.0;
    std::vector<double> left(static_cast<std::size_t>(num_classes));
    for (int fi = 0; fi < max_features; ++fi) {
      const int f = features[static_cast<std::size_t>(fi)];
      scratch.clear();
      for (std::size_t i = begin; i < end; ++i) scratch.emplace_back(x.at(idx[i], static_cast<std::size_t>(f)), y[idx[i]]);
      std::sort(scratch.begin(), scratch.end());
      std::fill(left.begin(), left.end(), 0.0);
      double lsq = 0.0, rsq = total_sq;
      std::vector<double> right = total;
      for (std::size_t i = 1; i < scratch.size(); ++i) {
        const auto c = static_cast<std::size_t>(scratch[i - 1].second);
        lsq += 2.0 * left[c] + 1.0;
        left[c] += 1.0;
        rsq -= 2.0 * right[c] - 1.0;
        right[c] -= 1.0;
        if (scratch[i].first == scratch[i - 1].first) continue;
        const double nl = static_cast<double>(i), nr = nn - nl;
        const double impurity = (nl * (1.0 - lsq / (nl * nl)) + nr * (1.0 - rsq / (nr * nr))) / nn;
        if (impurity < best) {
          best = impurity;
          best_feature = f;
          best_threshold = 0.5 * (scratch[i - 1].first + scratch[i].first);
        }
      }
    }
    if (best_feature < 0) return node;

    const auto mid_it = std::stable_partition(
        idx.begin() + static_cast<std::ptrdiff_t>(begin), idx.begin() + static_cast<std::ptrdiff_t>(end),
        [&](std::size_t r) { return x.at(r, static_cast<std::size_t>(best_feature)) <= best_threshold; });
    const auto mid = static_cast<std::size_t>(mid_it - idx.begin());
    const int l = build(idx, begin, mid, depth + 1);
    const int r = build(idx, mid, end, depth + 1);
    auto &nd = tree[static_cast<std::size_t>(node)];
    nd.feature = best_feature;
    nd.threshold = best_threshold;
    nd.left = l;
    nd.right = r;
    return node;
  }
};

} // namespace

void RandomForest::fit(const FeatureMatrix &x, std::span<const int> y, int num_classes) {
  check_training_set(x, y, num_classes);
  if (params_.trees < 1 || params_.max_depth < 0) throw std::invalid_argument("forest: invalid tree count or depth");
  int m = params_.max_features > 0 ? params_.max_features
                                   : static_cast<int>(std::lround(std::sqrt(static_cast<double>(x.cols))));
  m = std::clamp(m, 1, static_cast<int>(x.cols));

  trees_.assign(static_cast<std::size_t>(params_.trees), {});
#pragma omp parallel for schedule(dynamic, 1)
  for (int t = 0; t < params_.trees; ++t) {
    TreeBuilder b{x, y, num_classes, params_, m, Rng(derive_seed(params_.seed, {static_cast<std::uint64_t>(t)})), {}, {}};
    std::uniform_int_distribution<std::size_t> draw(0, x.rows - 1);
    std::vector<std::size_t> idx(x.rows);
    for (auto &i : idx) i = draw(b.rng);
    b.build(idx, 0, idx.size(), 0);
    trees_[static_cast<std::size_t>(t)] = std::move(b.tree);
  }
  dim_ = x.cols;
  num_classes_ = num_classes;
}

int RandomForest::predict(std::span<const double> x) const {
  require_trained(x.size());
  std::vector<int> counts(static_cast<std::size_t>(num_classes_), 0);
  for (const auto &tree : trees_) {
    int node = 0;
    while (tree[static_cast<std::size_t>(node)].feature >= 0) {
      const auto &nd = tree[static_cast<std::size_t>(node)];
      node = x[static_cast<std::size_t>(nd.feature)] <= nd.threshold ? nd.left : nd.right;
    }
    ++counts[static_cast<std::size_t>(tree[static_cast<std::size_t>(node)].label)];
  }
  return vote(counts);
}

// -----------------------------------------------------------------------------

ClassifierKind parse_classifier_kind(const std::string &name) {
  if (name == "knn") return ClassifierKind::knn;
  if (name == "svm") return ClassifierKind::svm;
  if (name == "forest") return ClassifierKind::forest;
  throw std::invalid_argument("unknown classifier '" + name + "' (expected knn, svm or forest)");
}

std::string to_string(ClassifierKind kind) {
  switch (kind) {
  case ClassifierKind::knn: return "knn";
  case ClassifierKind::svm: return "svm";
  case ClassifierKind::forest: return "forest";
  }
  return "?";
}

std::unique_ptr<Classifier> make_classifier(const ClassifierConfig &cfg) {
  switch (cfg.kind) {
  case ClassifierKind::knn: return std::make_unique<KnnClassifier>(cfg.knn_k);
  case ClassifierKind::svm: return std::make_unique<LinearSvm>(cfg.svm);
  case ClassifierKind::forest: return std::make_unique<RandomForest>(cfg.forest);
  }
  throw std::invalid_argument("unknown classifier kind");
}

} // namespace biobraille
