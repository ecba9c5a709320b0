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

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace biobraille {

/// Dense row-major sample matrix.
struct FeatureMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  FeatureMatrix() = default;
  FeatureMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

  std::span<const double> row(std::size_t i) const { return {data.data() + i * cols, cols}; }
  std::span<double> row(std::size_t i) { return {data.data() + i * cols, cols}; }
  double &at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

/// Per-column z-scoring fitted on one matrix and applied to others.
/// Constant columns get unit scale.
struct Standardizer {
  std::vector<double> mean;
  std::vector<double> scale;

  static Standardizer fit(const FeatureMatrix &x);
  FeatureMatrix transform(const FeatureMatrix &x) const;
};

class Classifier {
public:
  virtual ~Classifier() = default;

  /// Labels are class indices in [0, num_classes); every class needs at
  /// least one example.
  virtual void fit(const FeatureMatrix &x, std::span<const int> y, int num_classes) = 0;
  virtual int predict(std::span<const double> x) const = 0;
  virtual std::string name() const = 0;

  /// Row-parallel prediction.
  std::vector<int> predict_all(const FeatureMatrix &x) const;
  bool trained() const { return num_classes_ > 0; }
  int num_classes() const { return num_classes_; }

protected:
  void check_training_set(const FeatureMatrix &x, std::span<const int> y, int num_classes) const;
  void require_trained(std::size_t dim) const;

  int num_classes_ = 0;
  std::size_t dim_ = 0;
};

/// Majority vote among the k nearest training rows (Euclidean). Distance
/// ties go to the earlier training row, vote ties to the smaller class.
class KnnClassifier final : public Classifier {
public:
  explicit KnnClassifier(int k = 5) : k_(k) {}
  void fit(const FeatureMatrix &x, std::span<const int> y, int num_classes) override;
  int predict(std::span<const double> x) const override;
  std::string name() const override { return "knn"; }

  /// Indices of the k nearest training rows, nearest first.
  std::vector<std::size_t> neighbours(std::span<const double> x) const;

private:
  int k_;
  FeatureMatrix train_;
  std::vector<int> labels_;
};

struct SvmParams {
  double lambda = 3e-3; // L2 strength
  int epochs = 30;
  double eta0 = 2.0;
  bool balanced = true; // reweight positives vs negatives per binary problem
  std::uint64_t seed = 0;
};

/// One-vs-rest linear hinge-loss SVM trained by averaged stochastic
/// subgradient descent with a seeded visiting order.
class LinearSvm final : public Classifier {
public:
  explicit LinearSvm(SvmParams p = {}) : params_(p) {}
  void fit(const FeatureMatrix &x, std::span<const int> y, int num_classes) override;
  int predict(std::span<const double> x) const override;
  std::string name() const override { return "svm"; }

  std::vector<double> decision(std::span<const double> x) const;
  const std::vector<std::vector<double>> &weights() const { return weights_; }
  const std::vector<double> &bias() const { return bias_; }

private:
  SvmParams params_;
  std::vector<std::vector<double>> weights_;
  std::vector<double> bias_;
};

struct ForestParams {
  int trees = 100;
  int max_depth = 12;
  int min_samples_split = 2;
  int max_features = 0; // 0 -> round(sqrt(dim))
  std::uint64_t seed = 0;
};

/// Bagged Gini decision trees with per-split feature subsampling.
class RandomForest final : public Classifier {
public:
  explicit RandomForest(ForestParams p = {}) : params_(p) {}
  void fit(const FeatureMatrix &x, std::span<const int> y, int num_classes) override;
  int predict(std::span<const double> x) const override;
  std::string name() const override { return "forest"; }

  struct Node {
    int feature = -1; // -1 marks a leaf
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    int label = 0;
  };
  using Tree = std::vector<Node>;

  const std::vector<Tree> &trees() const { return trees_; }

private:
  ForestParams params_;
  std::vector<Tree> trees_;
};

enum class ClassifierKind { knn, svm, forest };

ClassifierKind parse_classifier_kind(const std::string &name);
std::string to_string(ClassifierKind kind);

struct ClassifierConfig {
  ClassifierKind kind = ClassifierKind::svm;
  int knn_k = 5;
  SvmParams svm;
  ForestParams forest;
};

std::unique_ptr<Classifier> make_classifier(const ClassifierConfig &cfg);

} // namespace biobraille
