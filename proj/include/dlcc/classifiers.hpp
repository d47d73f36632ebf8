#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dlcc {

enum class ClassifierKind { DecisionTree, NaiveBayes, Knn, Svm, RandomForest, Mlp };

// Canonical order; also the tie-break order for "best classifier".
inline constexpr std::array<ClassifierKind, 6> kAllClassifiers = {
    ClassifierKind::DecisionTree, ClassifierKind::NaiveBayes,   ClassifierKind::Knn,
    ClassifierKind::Svm,          ClassifierKind::RandomForest, ClassifierKind::Mlp};

std::string classifierName(ClassifierKind k);  // "decisionTree", ...
std::optional<ClassifierKind> parseClassifierKind(std::string_view name);

// Dense row-major feature matrix.
struct FeatureMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  FeatureMatrix() = default;
  FeatureMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

  std::span<const double> row(std::size_t i) const { return {data.data() + i * cols, cols}; }
  std::span<double> row(std::size_t i) { return {data.data() + i * cols, cols}; }
  double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

// Binary classifier over labels {0, 1}. fit() needs at least one row.
class Classifier {
 public:
  virtual ~Classifier() = default;
  virtual void fit(const FeatureMatrix& x, std::span<const int> y) = 0;
  virtual int predict(std::span<const double> row) const = 0;
  std::vector<int> predictAll(const FeatureMatrix& x) const;
};

// Pinned hyperparameters (see README):
//   decisionTree  CART, Gini, unlimited depth, midpoint thresholds, ties to the
//                 lowest feature index then lowest threshold
//   naiveBayes    Gaussian, variance smoothing 1e-9 * largest feature variance
//   knn           k = 5, Euclidean, distance ties to the lower training index
//   svm           linear, hinge loss, C = 1, Pegasos subgradient steps for
//                 1000 epochs, standardized features
//   randomForest  100 bootstrap CART trees, floor(sqrt(d)) features per split
//   mlp           100 ReLU units, logistic output, Adam (0.001), batch 200,
//                 L2 1e-4, at most 200 epochs, standardized features
// Predicted-score ties resolve to label 0.
std::unique_ptr<Classifier> makeClassifier(ClassifierKind kind, std::uint64_t seed);

struct TreeParams {
  std::size_t maxFeatures = 0;  // 0 = all features
};

class DecisionTree : public Classifier {
 public:
  explicit DecisionTree(TreeParams params = {}, std::uint64_t seed = 0)
      : params_(params), seed_(seed) {}
  void fit(const FeatureMatrix& x, std::span<const int> y) override;
  // Same as fit() but on a multiset of row indices (bootstrap samples).
  void fitRows(const FeatureMatrix& x, std::span<const int> y, std::vector<std::size_t> rows);
  int predict(std::span<const double> row) const override { return probability(row) > 0.5 ? 1 : 0; }
  double probability(std::span<const double> row) const;
  std::size_t nodeCount() const noexcept { return nodes_.size(); }

 private:
  struct Node {
    int feature = -1;  // -1 marks a leaf
    double threshold = 0.0;
    std::size_t left = 0;
    std::size_t right = 0;
    double positiveFraction = 0.0;
  };
  TreeParams params_;
  std::uint64_t seed_;
  std::vector<Node> nodes_;
};

class GaussianNaiveBayes : public Classifier {
 public:
  void fit(const FeatureMatrix& x, std::span<const int> y) override;
  int predict(std::span<const double> row) const override;

 private:
  std::array<std::vector<double>, 2> mean_, var_;
  std::array<double, 2> logPrior_{};
  std::array<bool, 2> present_{};
};

class KNearestNeighbors : public Classifier {
 public:
  explicit KNearestNeighbors(std::size_t k = 5) : k_(k) {}
  void fit(const FeatureMatrix& x, std::span<const int> y) override;
  int predict(std::span<const double> row) const override;

 private:
  std::size_t k_;
  FeatureMatrix x_;
  std::vector<int> y_;
};

class LinearSvm : public Classifier {
 public:
  LinearSvm(std::uint64_t seed, double c = 1.0, int epochs = 1000)
      : seed_(seed), c_(c), epochs_(epochs) {}
  void fit(const FeatureMatrix& x, std::span<const int> y) override;
  int predict(std::span<const double> row) const override;
  double decision(std::span<const double> row) const;

 private:
  std::uint64_t seed_;
  double c_;
  int epochs_;
  std::vector<double> mean_, scale_, w_;  // w_ has a trailing bias weight
};

class RandomForest : public Classifier {
 public:
  RandomForest(std::uint64_t seed, int trees = 100) : seed_(seed), trees_(trees) {}
  void fit(const FeatureMatrix& x, std::span<const int> y) override;
  int predict(std::span<const double> row) const override;

 private:
  std::uint64_t seed_;
  int trees_;
  std::vector<DecisionTree> forest_;
};

struct MlpParams {
  std::size_t hidden = 100;
  double learningRate = 0.001;
  double l2 = 1e-4;
  std::size_t batchSize = 200;
  int maxEpochs = 200;
  double tolerance = 1e-4;
  int patience = 10;  // epochs without tolerance-sized loss improvement
};

class Mlp : public Classifier {
 public:
  explicit Mlp(std::uint64_t seed, MlpParams params = {});
  ~Mlp() override;
  void fit(const FeatureMatrix& x, std::span<const int> y) override;
  int predict(std::span<const double> row) const override;
  int epochsRun() const noexcept { return epochs_; }

 private:
  struct Weights;
  std::uint64_t seed_;
  MlpParams params_;
  std::unique_ptr<Weights> w_;
  std::vector<double> mean_, scale_;
  int epochs_ = 0;
};

// Column means and standard deviations of x; zero deviations become 1.
void fitStandardizer(const FeatureMatrix& x, std::vector<double>& mean, std::vector<double>& scale);

}  // namespace dlcc
