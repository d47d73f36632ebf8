#include "dlcc/evaluation.hpp"

#include <algorithm>

#include "dlcc/error.hpp"
#include "dlcc/gold_io.hpp"
#include "dlcc/parallel.hpp"
#include "dlcc/rng.hpp"

namespace dlcc {

namespace fs = std::filesystem;

std::string policyName(MissingVectorPolicy p) {
  switch (p) {
    case MissingVectorPolicy::Error: return "error";
    case MissingVectorPolicy::DropExample: return "drop";
    case MissingVectorPolicy::ZeroVector: return "zero";
  }
  return "?";
}

std::optional<MissingVectorPolicy> parsePolicy(std::string_view name) {
  if (name == "error") return MissingVectorPolicy::Error;
  if (name == "drop" || name == "dropExample") return MissingVectorPolicy::DropExample;
  if (name == "zero" || name == "zeroVector") return MissingVectorPolicy::ZeroVector;
  return std::nullopt;
}

FeatureMatrix vectorize(const std::vector<LabeledUri>& rows, const EmbeddingSet& emb,
                        MissingVectorPolicy policy, std::vector<int>& labels) {
  const std::size_t d = emb.dimension();
  FeatureMatrix x;
  x.cols = d;
  x.data.reserve(rows.size() * d);
  labels.clear();
  for (const auto& r : rows) {
    auto v = emb.find(r.uri.str());
    if (v.empty()) {
      if (policy == MissingVectorPolicy::Error) throw MissingVectorError(r.uri.str());
      if (policy == MissingVectorPolicy::DropExample) continue;
      x.data.insert(x.data.end(), d, 0.0);
    } else {
      x.data.insert(x.data.end(), v.begin(), v.end());
    }
    labels.push_back(r.label);
    ++x.rows;
  }
  return x;
}

Score trainAndScore(const SplitGoldStandard& split, const EmbeddingSet& emb, ClassifierKind kind,
                    std::uint64_t seed, MissingVectorPolicy policy) {
  if (emb.dimension() == 0) throw EvaluationError("embedding has no dimensions");
  std::vector<int> trainY, testY;
  const auto trainX = vectorize(split.train, emb, policy, trainY);
  const auto testX = vectorize(split.test, emb, policy, testY);
  const auto positives = std::count(trainY.begin(), trainY.end(), 1);
  if (positives == 0 || positives == static_cast<std::ptrdiff_t>(trainY.size()))
    throw EvaluationError("training data lacks one of the classes");
  if (testX.rows == 0) throw EvaluationError("no test examples left");

  auto model = makeClassifier(kind, seed);
  model->fit(trainX, trainY);
  Score s;
  s.total = testX.rows;
  for (std::size_t i = 0; i < testX.rows; ++i) s.correct += model->predict(testX.row(i)) == testY[i];
  return s;
}

const EmbeddingSet* NamedEmbedding::forTestCase(const std::string& testCase) const {
  if (shared) return shared.get();
  auto it = perTestCase.find(testCase);
  return it == perTestCase.end() ? nullptr : it->second.get();
}

NamedEmbedding loadNamedEmbedding(const std::string& name, const fs::path& path,
                                  std::vector<std::string>* warnings) {
  NamedEmbedding e;
  e.name = name;
  if (fs::is_directory(path)) {
    for (const auto& entry : fs::directory_iterator(path)) {
      const auto stem = entry.path().stem().string();
      if (entry.is_regular_file() && entry.path().extension() == ".txt" && parseFamily(stem))
        e.perTestCase[stem] = std::make_shared<EmbeddingSet>(loadEmbeddings(entry.path(), warnings));
    }
    if (e.perTestCase.empty())
      throw Error("embedding directory " + path.string() + " holds no tcXX.txt files");
  } else {
    e.shared = std::make_shared<EmbeddingSet>(loadEmbeddings(path, warnings));
  }
  return e;
}

std::uint64_t cellSeed(std::uint64_t seed, const std::string& testCase, const std::string& domain,
                       int size, bool hard, ClassifierKind kind) {
  return deriveSeed(seed, testCase + "/" + domain + "/" + std::to_string(size) +
                              (hard ? "/hard/" : "/plain/") + classifierName(kind));
}

std::vector<CellResult> runSuite(const fs::path& goldRoot, const std::vector<NamedEmbedding>& embeddings,
                                 const EvalOptions& options) {
  if (embeddings.empty()) throw ValidationError("no embeddings to evaluate");
  if (options.classifiers.empty()) throw ValidationError("no classifiers selected");
  const auto cells = discoverCells(goldRoot);

  std::vector<SplitGoldStandard> splits(cells.size());
  for (std::size_t c = 0; c < cells.size(); ++c) {
    splits[c].train = readSplitCsv(cells[c].trainFile());
    splits[c].test = readSplitCsv(cells[c].testFile());
  }

  const std::size_t k = options.classifiers.size();
  const std::size_t units = embeddings.size() * cells.size();
  std::vector<CellResult> results(units * k);
  parallelFor(units, options.jobs, [&](std::size_t u) {
    const auto& emb = embeddings[u / cells.size()];
    const std::size_t c = u % cells.size();
    const auto& cell = cells[c];
    const EmbeddingSet* vectors = emb.forTestCase(cell.testCase);
    for (std::size_t j = 0; j < k; ++j) {
      const ClassifierKind kind = options.classifiers[j];
      CellResult& r = results[u * k + j];
      r.embedding = emb.name;
      r.testCase = cell.testCase;
      r.domain = cell.domain;
      r.size = cell.size;
      r.hard = cell.hard;
      r.classifier = kind;
      if (!vectors) {
        r.error = "no embedding vectors for " + cell.testCase;
        continue;
      }
      try {
        const auto seed = cellSeed(options.seed, cell.testCase, cell.domain, cell.size, cell.hard, kind);
        const Score s = trainAndScore(splits[c], *vectors, kind, seed, options.policy);
        r.nCorrect = s.correct;
        r.nTest = s.total;
        r.accuracy = s.accuracy();
        const auto sig = options.exactBinomial
                             ? exactSignificance(s.correct, s.total, options.alpha, options.bonferroniM)
                             : significance(r.accuracy, s.total, options.alpha, options.bonferroniM);
        r.pValue = sig.pValue;
        r.significant = sig.significant;
      } catch (const MissingVectorError&) {
        throw;
      } catch (const Error& e) {
        r.error = e.what();
      }
    }
  });
  return results;
}

}  // namespace dlcc
