#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dlcc/classifiers.hpp"
#include "dlcc/embeddings.hpp"
#include "dlcc/significance.hpp"
#include "dlcc/split.hpp"

namespace dlcc {

enum class MissingVectorPolicy { Error, DropExample, ZeroVector };

std::string policyName(MissingVectorPolicy p);  // "error", "drop", "zero"
std::optional<MissingVectorPolicy> parsePolicy(std::string_view name);

struct CellResult {
  std::string embedding;
  std::string testCase;
  std::string domain;  // "synthetic" or a DBpedia domain
  int size = 0;
  bool hard = false;
  ClassifierKind classifier = ClassifierKind::DecisionTree;
  double accuracy = 0.0;
  std::size_t nCorrect = 0;
  std::size_t nTest = 0;
  double pValue = 1.0;
  bool significant = false;
  std::string error;  // non-empty if the cell could not be evaluated

  bool ok() const { return error.empty(); }
};

struct Score {
  std::size_t correct = 0;
  std::size_t total = 0;
  double accuracy() const { return total ? static_cast<double>(correct) / static_cast<double>(total) : 0.0; }
};

// Turns labeled URIs into a feature matrix under the policy. Returns the
// rows kept. Throws MissingVectorError under MissingVectorPolicy::Error.
FeatureMatrix vectorize(const std::vector<LabeledUri>& rows, const EmbeddingSet& emb,
                        MissingVectorPolicy policy, std::vector<int>& labels);

// Trains on split.train and scores on split.test. Throws EvaluationError if
// a class is missing from train or test is empty after the policy.
Score trainAndScore(const SplitGoldStandard& split, const EmbeddingSet& emb, ClassifierKind kind,
                    std::uint64_t seed, MissingVectorPolicy policy = MissingVectorPolicy::Error);

// One embedding as given to the evaluator: either a single file covering
// every test case or one file per test case (tcXX.txt in a directory).
struct NamedEmbedding {
  std::string name;
  std::shared_ptr<const EmbeddingSet> shared;
  std::map<std::string, std::shared_ptr<const EmbeddingSet>> perTestCase;

  // nullptr if no vectors are available for the test case.
  const EmbeddingSet* forTestCase(const std::string& testCase) const;
};

// `path` is a file or a directory of tcXX.txt files.
NamedEmbedding loadNamedEmbedding(const std::string& name, const std::filesystem::path& path,
                                  std::vector<std::string>* warnings = nullptr);

struct EvalOptions {
  std::vector<ClassifierKind> classifiers{kAllClassifiers.begin(), kAllClassifiers.end()};
  MissingVectorPolicy policy = MissingVectorPolicy::Error;
  std::uint64_t seed = 42;
  double alpha = kDefaultAlpha;
  int bonferroniM = kDefaultBonferroniM;
  bool exactBinomial = false;
  int jobs = 1;
};

// Seed for one classifier run; independent of the embedding so every
// embedding sees the same classifier randomness.
std::uint64_t cellSeed(std::uint64_t seed, const std::string& testCase, const std::string& domain,
                       int size, bool hard, ClassifierKind kind);

// Every (embedding, cell, classifier) below goldRoot, in canonical order.
// A MissingVectorError under the error policy aborts the run; other per-cell
// failures are recorded in CellResult::error.
std::vector<CellResult> runSuite(const std::filesystem::path& goldRoot,
                                 const std::vector<NamedEmbedding>& embeddings,
                                 const EvalOptions& options = {});

}  // namespace dlcc
