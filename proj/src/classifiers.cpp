#include "dlcc/classifiers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Dense>

#include "dlcc/error.hpp"
#include "dlcc/rng.hpp"

namespace dlcc {

std::string classifierName(ClassifierKind k) {
  switch (k) {
    case ClassifierKind::DecisionTree: return "decisionTree";
    case ClassifierKind::NaiveBayes: return "naiveBayes";
    case ClassifierKind::Knn: return "knn";
    case ClassifierKind::Svm: return "svm";
    case ClassifierKind::RandomForest: return "randomForest";
    case ClassifierKind::Mlp: return "mlp";
  }
  return "?";
}

std::optional<ClassifierKind> parseClassifierKind(std::string_view name) {
  for (auto k : kAllClassifiers) {
    if (classifierName(k) == name) return k;
  }
  return std::nullopt;
}

std::vector<int> Classifier::predictAll(const FeatureMatrix& x) const {
  std::vector<int> out(x.rows);
  for (std::size_t i = 0; i < x.rows; ++i) out[i] = predict(x.row(i));
  return out;
}

namespace {

void requireFit(const FeatureMatrix& x, std::span<const int> y) {
  if (x.rows == 0 || x.cols == 0) throw EvaluationError("cannot fit on an empty matrix");
  if (y.size() != x.rows) throw EvaluationError("label count does not match rows");
}

}  // namespace

void fitStandardizer(const FeatureMatrix& x, std::vector<double>& mean, std::vector<double>& scale) {
  mean.assign(x.cols, 0.0);
  scale.assign(x.cols, 0.0);
  for (std::size_t i = 0; i < x.rows; ++i) {
    for (std::size_t j = 0; j < x.cols; ++j) mean[j] += x(i, j);
  }
  for (auto& m : mean) m /= static_cast<double>(x.rows);
  for (std::size_t i = 0; i < x.rows; ++i) {
    for (std::size_t j = 0; j < x.cols; ++j) {
      const double d = x(i, j) - mean[j];
      scale[j] += d * d;
    }
  }
  for (auto& s : scale) {
    s = std::sqrt(s / static_cast<double>(x.rows));
    if (s == 0.0) s = 1.0;
  }
}

// ---------------------------------------------------------------- tree

void DecisionTree::fit(const FeatureMatrix& x, std::span<const int> y) {
  std::vector<std::size_t> rows(x.rows);
  std::iota(rows.begin(), rows.end(), 0);
  fitRows(x, y, std::move(rows));
}

void DecisionTree::fitRows(const FeatureMatrix& x, std::span<const int> y,
                           std::vector<std::size_t> rows) {
  requireFit(x, y);
  if (rows.empty()) throw EvaluationError("cannot fit a tree on zero rows");
  nodes_.clear();
  Rng rng(seed_);
  const bool subsample = params_.maxFeatures > 0 && params_.maxFeatures < x.cols;

  struct Pending {
    std::size_t node;
    std::vector<std::size_t> rows;
  };
  std::vector<Pending> stack;
  nodes_.push_back({});
  stack.push_back({0, std::move(rows)});
  std::vector<std::pair<double, int>> column;
  std::vector<std::size_t> features(x.cols);
  std::iota(features.begin(), features.end(), 0);

  while (!stack.empty()) {
    Pending job = std::move(stack.back());
    stack.pop_back();
    const auto& r = job.rows;
    const double n = static_cast<double>(r.size());
    std::size_t pos = 0;
    for (std::size_t i : r) pos += y[i] == 1;
    nodes_[job.node].positiveFraction = static_cast<double>(pos) / n;
    if (pos == 0 || pos == r.size()) continue;

    if (subsample) {
      features = rng.sampleIndices(x.cols, params_.maxFeatures);
      std::sort(features.begin(), features.end());
    }
    // Maximizing sum over children of (p^2 + q^2) / size minimizes the
    // size-weighted Gini impurity.
    double bestScore = -1.0;
    int bestFeature = -1;
    double bestThreshold = 0.0;
    const double tieSlack = 1e-12 * n;
    for (std::size_t f : features) {
      column.clear();
      for (std::size_t i : r) column.emplace_back(x(i, f), y[i]);
      std::sort(column.begin(), column.end());
      double leftPos = 0, leftCount = 0;
      const double totalPos = static_cast<double>(pos);
      for (std::size_t k = 0; k + 1 < column.size(); ++k) {
        leftCount += 1;
        leftPos += column[k].second;
        if (!(column[k].first < column[k + 1].first)) continue;
        const double rightCount = n - leftCount;
        const double rightPos = totalPos - leftPos;
        const double leftNeg = leftCount - leftPos;
        const double rightNeg = rightCount - rightPos;
        const double score = (leftPos * leftPos + leftNeg * leftNeg) / leftCount +
                             (rightPos * rightPos + rightNeg * rightNeg) / rightCount;
        if (score > bestScore + tieSlack) {
          bestScore = score;
          bestFeature = static_cast<int>(f);
          double mid = column[k].first + (column[k + 1].first - column[k].first) / 2.0;
          if (!(mid < column[k + 1].first)) mid = column[k].first;
          bestThreshold = mid;
        }
      }
    }
    if (bestFeature < 0) continue;

    Pending left{nodes_.size(), {}}, right{nodes_.size() + 1, {}};
    for (std::size_t i : r) {
      (x(i, static_cast<std::size_t>(bestFeature)) <= bestThreshold ? left.rows : right.rows).push_back(i);
    }
    nodes_.push_back({});
    nodes_.push_back({});
    auto& node = nodes_[job.node];
    node.feature = bestFeature;
    node.threshold = bestThreshold;
    node.left = left.node;
    node.right = right.node;
    stack.push_back(std::move(right));
    stack.push_back(std::move(left));
  }
}

double DecisionTree::probability(std::span<const double> row) const {
  if (nodes_.empty()) throw EvaluationError("decision tree used before fit");
  std::size_t k = 0;
  while (nodes_[k].feature >= 0) {
    const auto& node = nodes_[k];
    k = row[static_cast<std::size_t>(node.feature)] <= node.threshold ? node.left : node.right;
  }
  return nodes_[k].positiveFraction;
}

// ---------------------------------------------------------------- naive Bayes

void GaussianNaiveBayes::fit(const FeatureMatrix& x, std::span<const int> y) {
  requireFit(x, y);
  std::vector<double> allMean, allScale;
  fitStandardizer(x, allMean, allScale);
  double maxVar = 0.0;
  for (std::size_t j = 0; j < x.cols; ++j) {
    // fitStandardizer maps zero deviation to 1; recompute the raw variance.
    double v = 0.0;
    for (std::size_t i = 0; i < x.rows; ++i) v += (x(i, j) - allMean[j]) * (x(i, j) - allMean[j]);
    maxVar = std::max(maxVar, v / static_cast<double>(x.rows));
  }
  const double epsilon = maxVar > 0.0 ? 1e-9 * maxVar : 1e-9;

  for (int c = 0; c < 2; ++c) {
    auto& mean = mean_[c];
    auto& var = var_[c];
    mean.assign(x.cols, 0.0);
    var.assign(x.cols, 0.0);
    std::size_t count = 0;
    for (std::size_t i = 0; i < x.rows; ++i) {
      if (y[i] != c) continue;
      ++count;
      for (std::size_t j = 0; j < x.cols; ++j) mean[j] += x(i, j);
    }
    present_[c] = count > 0;
    if (!present_[c]) continue;
    for (auto& m : mean) m /= static_cast<double>(count);
    for (std::size_t i = 0; i < x.rows; ++i) {
      if (y[i] != c) continue;
      for (std::size_t j = 0; j < x.cols; ++j) var[j] += (x(i, j) - mean[j]) * (x(i, j) - mean[j]);
    }
    for (auto& v : var) v = v / static_cast<double>(count) + epsilon;
    logPrior_[c] = std::log(static_cast<double>(count) / static_cast<double>(x.rows));
  }
}

int GaussianNaiveBayes::predict(std::span<const double> row) const {
  std::array<double, 2> score{-std::numeric_limits<double>::infinity(),
                              -std::numeric_limits<double>::infinity()};
  for (int c = 0; c < 2; ++c) {
    if (!present_[c]) continue;
    double s = logPrior_[c];
    for (std::size_t j = 0; j < row.size(); ++j) {
      const double d = row[j] - mean_[c][j];
      s -= 0.5 * (std::log(2.0 * M_PI * var_[c][j]) + d * d / var_[c][j]);
    }
    score[c] = s;
  }
  return score[1] > score[0] ? 1 : 0;
}

// ---------------------------------------------------------------- kNN

void KNearestNeighbors::fit(const FeatureMatrix& x, std::span<const int> y) {
  requireFit(x, y);
  x_ = x;
  y_.assign(y.begin(), y.end());
}

int KNearestNeighbors::predict(std::span<const double> row) const {
  if (y_.empty()) throw EvaluationError("knn used before fit");
  std::vector<std::pair<double, std::size_t>> dist(x_.rows);
  for (std::size_t i = 0; i < x_.rows; ++i) {
    const auto r = x_.row(i);
    double d = 0.0;
    for (std::size_t j = 0; j < r.size(); ++j) d += (r[j] - row[j]) * (r[j] - row[j]);
    dist[i] = {d, i};
  }
  const std::size_t k = std::min(k_, dist.size());
  std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k), dist.end());
  std::size_t votes = 0;
  for (std::size_t i = 0; i < k; ++i) votes += y_[dist[i].second] == 1;
  if (2 * votes > k) return 1;
  if (2 * votes < k) return 0;
  return y_[dist[0].second];  // even split: the nearest neighbour decides
}

// ---------------------------------------------------------------- SVM

void LinearSvm::fit(const FeatureMatrix& x, std::span<const int> y) {
  requireFit(x, y);
  fitStandardizer(x, mean_, scale_);
  const std::size_t n = x.rows, d = x.cols;
  // Standardized rows with a constant 1 appended for the bias.
  std::vector<double> z(n * (d + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) z[i * (d + 1) + j] = (x(i, j) - mean_[j]) / scale_[j];
    z[i * (d + 1) + d] = 1.0;
  }
  // Pegasos; w is kept as a * v so the shrink step is O(1).
  const double lambda = 1.0 / (c_ * static_cast<double>(n));
  std::vector<double> v(d + 1, 0.0);
  double a = 1.0;
  Rng rng(seed_);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::uint64_t t = 0;
  for (int epoch = 0; epoch < epochs_; ++epoch) {
    rng.shuffle(order);
    for (std::size_t i : order) {
      ++t;
      const double eta = 1.0 / (lambda * static_cast<double>(t));
      const double* zi = z.data() + i * (d + 1);
      double dot = 0.0;
      for (std::size_t j = 0; j <= d; ++j) dot += v[j] * zi[j];
      const double yi = y[i] == 1 ? 1.0 : -1.0;
      const double margin = yi * a * dot;
      const double shrink = 1.0 - eta * lambda;
      if (shrink <= 0.0) {
        std::fill(v.begin(), v.end(), 0.0);
        a = 1.0;
      } else {
        a *= shrink;
      }
      if (margin < 1.0) {
        const double step = eta * yi / a;
        for (std::size_t j = 0; j <= d; ++j) v[j] += step * zi[j];
      }
      if (a < 1e-100) {
        for (auto& vj : v) vj *= a;
        a = 1.0;
      }
    }
  }
  w_.resize(d + 1);
  for (std::size_t j = 0; j <= d; ++j) w_[j] = a * v[j];
}

double LinearSvm::decision(std::span<const double> row) const {
  if (w_.empty()) throw EvaluationError("svm used before fit");
  const std::size_t d = mean_.size();
  double s = w_[d];
  for (std::size_t j = 0; j < d; ++j) s += w_[j] * (row[j] - mean_[j]) / scale_[j];
  return s;
}

int LinearSvm::predict(std::span<const double> row) const { return decision(row) > 0.0 ? 1 : 0; }

// ---------------------------------------------------------------- forest

void RandomForest::fit(const FeatureMatrix& x, std::span<const int> y) {
  requireFit(x, y);
  Rng rng(seed_);
  TreeParams params;
  params.maxFeatures = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(x.cols)))));
  forest_.clear();
  forest_.reserve(static_cast<std::size_t>(trees_));
  for (int t = 0; t < trees_; ++t) {
    std::vector<std::size_t> sample(x.rows);
    for (auto& s : sample) s = rng.index(x.rows);
    const std::uint64_t treeSeed = rng.next();
    forest_.emplace_back(params, treeSeed);
    forest_.back().fitRows(x, y, std::move(sample));
  }
}

int RandomForest::predict(std::span<const double> row) const {
  if (forest_.empty()) throw EvaluationError("random forest used before fit");
  double sum = 0.0;
  for (const auto& tree : forest_) sum += tree.probability(row);
  return sum / static_cast<double>(forest_.size()) > 0.5 ? 1 : 0;
}

// ---------------------------------------------------------------- MLP

struct Mlp::Weights {
  Eigen::MatrixXd w1;      // d x h
  Eigen::RowVectorXd b1;   // 1 x h
  Eigen::VectorXd w2;      // h
  double b2 = 0.0;
};

Mlp::Mlp(std::uint64_t seed, MlpParams params) : seed_(seed), params_(params) {}
Mlp::~Mlp() = default;

namespace {

struct Adam {
  double beta1 = 0.9, beta2 = 0.999, eps = 1e-8, lr;
  int t = 0;
  Eigen::MatrixXd m1, v1;
  Eigen::RowVectorXd mb1, vb1;
  Eigen::VectorXd m2, v2;
  double mb2 = 0, vb2 = 0;
};

double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

}  // namespace

void Mlp::fit(const FeatureMatrix& x, std::span<const int> y) {
  requireFit(x, y);
  fitStandardizer(x, mean_, scale_);
  const std::size_t n = x.rows, d = x.cols, h = params_.hidden;
  Eigen::MatrixXd data(n, d);
  Eigen::VectorXd target(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) data(i, j) = (x(i, j) - mean_[j]) / scale_[j];
    target(i) = y[i] == 1 ? 1.0 : 0.0;
  }

  Rng rng(seed_);
  w_ = std::make_unique<Weights>();
  auto& W = *w_;
  // Glorot-uniform bounds; the logistic output layer uses the smaller factor.
  const double bound1 = std::sqrt(6.0 / static_cast<double>(d + h));
  const double bound2 = std::sqrt(2.0 / static_cast<double>(h + 1));
  auto draw = [&](double b) { return (2.0 * rng.uniform() - 1.0) * b; };
  W.w1.resize(d, h);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < h; ++j) W.w1(i, j) = draw(bound1);
  W.b1.resize(h);
  for (std::size_t j = 0; j < h; ++j) W.b1(j) = draw(bound1);
  W.w2.resize(h);
  for (std::size_t j = 0; j < h; ++j) W.w2(j) = draw(bound2);
  W.b2 = draw(bound2);

  Adam adam;
  adam.lr = params_.learningRate;
  adam.m1 = Eigen::MatrixXd::Zero(d, h);
  adam.v1 = adam.m1;
  adam.mb1 = Eigen::RowVectorXd::Zero(h);
  adam.vb1 = adam.mb1;
  adam.m2 = Eigen::VectorXd::Zero(h);
  adam.v2 = adam.m2;

  const std::size_t batch = std::clamp<std::size_t>(params_.batchSize, 1, n);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  double bestLoss = std::numeric_limits<double>::infinity();
  int stale = 0;
  Eigen::MatrixXd xb, z1, hb, dh, gw1;
  Eigen::VectorXd yb, p, delta, gw2;
  Eigen::RowVectorXd gb1;

  for (epochs_ = 0; epochs_ < params_.maxEpochs;) {
    rng.shuffle(order);
    double epochLoss = 0.0;
    for (std::size_t start = 0; start < n; start += batch) {
      const std::size_t b = std::min(batch, n - start);
      xb.resize(b, d);
      yb.resize(b);
      for (std::size_t k = 0; k < b; ++k) {
        xb.row(k) = data.row(order[start + k]);
        yb(k) = target(order[start + k]);
      }
      const double bd = static_cast<double>(b);
      z1 = (xb * W.w1).rowwise() + W.b1;
      hb = z1.cwiseMax(0.0);
      p = (hb * W.w2).array() + W.b2;
      for (Eigen::Index k = 0; k < p.size(); ++k) p(k) = sigmoid(p(k));

      double bce = 0.0;
      for (Eigen::Index k = 0; k < p.size(); ++k) {
        const double pk = std::clamp(p(k), 1e-15, 1.0 - 1e-15);
        bce -= yb(k) * std::log(pk) + (1.0 - yb(k)) * std::log(1.0 - pk);
      }
      const double l2 = 0.5 * params_.l2 * (W.w1.squaredNorm() + W.w2.squaredNorm()) / bd;
      epochLoss += bce + l2 * bd;

      delta = (p - yb) / bd;
      gw2 = hb.transpose() * delta + (params_.l2 / bd) * W.w2;
      const double gb2 = delta.sum();
      dh = (delta * W.w2.transpose()).array() * (z1.array() > 0.0).cast<double>();
      gw1 = xb.transpose() * dh + (params_.l2 / bd) * W.w1;
      gb1 = dh.colwise().sum();

      ++adam.t;
      const double c1 = 1.0 - std::pow(adam.beta1, adam.t);
      const double c2 = 1.0 - std::pow(adam.beta2, adam.t);
      const double step = adam.lr * std::sqrt(c2) / c1;
      adam.m1 = adam.beta1 * adam.m1 + (1 - adam.beta1) * gw1;
      adam.v1 = adam.beta2 * adam.v1 + (1 - adam.beta2) * gw1.cwiseProduct(gw1);
      W.w1.array() -= step * adam.m1.array() / (adam.v1.array().sqrt() + adam.eps);
      adam.mb1 = adam.beta1 * adam.mb1 + (1 - adam.beta1) * gb1;
      adam.vb1 = adam.beta2 * adam.vb1 + (1 - adam.beta2) * gb1.cwiseProduct(gb1);
      W.b1.array() -= step * adam.mb1.array() / (adam.vb1.array().sqrt() + adam.eps);
      adam.m2 = adam.beta1 * adam.m2 + (1 - adam.beta1) * gw2;
      adam.v2 = adam.beta2 * adam.v2 + (1 - adam.beta2) * gw2.cwiseProduct(gw2);
      W.w2.array() -= step * adam.m2.array() / (adam.v2.array().sqrt() + adam.eps);
      adam.mb2 = adam.beta1 * adam.mb2 + (1 - adam.beta1) * gb2;
      adam.vb2 = adam.beta2 * adam.vb2 + (1 - adam.beta2) * gb2 * gb2;
      W.b2 -= step * adam.mb2 / (std::sqrt(adam.vb2) + adam.eps);
    }
    ++epochs_;
    epochLoss /= static_cast<double>(n);
    if (epochLoss > bestLoss - params_.tolerance)
      ++stale;
    else
      stale = 0;
    bestLoss = std::min(bestLoss, epochLoss);
    if (stale > params_.patience) break;
  }
}

int Mlp::predict(std::span<const double> row) const {
  if (!w_) throw EvaluationError("mlp used before fit");
  const auto& W = *w_;
  const std::size_t d = mean_.size();
  Eigen::RowVectorXd xr(d);
  for (std::size_t j = 0; j < d; ++j) xr(static_cast<Eigen::Index>(j)) = (row[j] - mean_[j]) / scale_[j];
  const Eigen::RowVectorXd hidden = (xr * W.w1 + W.b1).cwiseMax(0.0);
  return sigmoid(hidden.dot(W.w2) + W.b2) > 0.5 ? 1 : 0;
}

// ---------------------------------------------------------------- factory

std::unique_ptr<Classifier> makeClassifier(ClassifierKind kind, std::uint64_t seed) {
  switch (kind) {
    case ClassifierKind::DecisionTree: return std::make_unique<DecisionTree>(TreeParams{}, seed);
    case ClassifierKind::NaiveBayes: return std::make_unique<GaussianNaiveBayes>();
    case ClassifierKind::Knn: return std::make_unique<KNearestNeighbors>(5);
    case ClassifierKind::Svm: return std::make_unique<LinearSvm>(seed);
    case ClassifierKind::RandomForest: return std::make_unique<RandomForest>(seed);
    case ClassifierKind::Mlp: return std::make_unique<Mlp>(seed);
  }
  throw EvaluationError("unknown classifier kind");
}

}  // namespace dlcc
