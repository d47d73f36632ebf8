#include <map>
#include <sstream>

#include "doctest.h"
#include "dlcc/error.hpp"
#include "dlcc/gold_io.hpp"
#include "dlcc/reports.hpp"
#include "support.hpp"

using namespace dlcc;
using namespace dlcc::test;

namespace {

CellResult cell(std::string emb, std::string tc, std::string domain, bool hard, ClassifierKind k,
                double acc, std::size_t n = 400) {
  CellResult r;
  r.embedding = std::move(emb);
  r.testCase = std::move(tc);
  r.domain = std::move(domain);
  r.size = r.domain == "synthetic" ? 1000 : 50;
  r.hard = hard;
  r.classifier = k;
  r.nTest = n;
  r.nCorrect = static_cast<std::size_t>(acc * static_cast<double>(n) + 0.5);
  r.accuracy = static_cast<double>(r.nCorrect) / static_cast<double>(n);
  const auto s = significance(r.accuracy, n);
  r.pValue = s.pValue;
  r.significant = s.significant;
  return r;
}

std::vector<std::vector<std::string>> readCsv(const fs::path& file) {
  std::istringstream in(readText(file));
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) rows.push_back(parseCsvLine(line));
  return rows;
}

std::vector<CellResult> randomResults(Rng& rng) {
  std::vector<CellResult> out;
  const char* domains[] = {"synthetic", "people", "books"};
  for (const char* emb : {"A", "B"}) {
    for (int t = 1; t <= 4; ++t) {
      for (const char* d : domains) {
        for (bool hard : {false, true}) {
          if (hard && std::string(d) == "synthetic") continue;
          for (auto k : kAllClassifiers) {
            // Coarse grid so ties are common.
            out.push_back(cell(emb, "tc0" + std::to_string(t), d, hard, k, 0.5 + 0.05 * static_cast<double>(rng.index(5)), 20));
          }
        }
      }
    }
  }
  rng.shuffle(out);
  return out;
}

}  // namespace

TEST_SUITE("reports") {

TEST_CASE("the best classifier wins and ties go to the earlier one") {
  const std::vector<CellResult> results = {
      cell("E", "tc01", "synthetic", false, ClassifierKind::Svm, 0.7),
      cell("E", "tc01", "synthetic", false, ClassifierKind::Mlp, 0.9),
      cell("E", "tc02", "synthetic", false, ClassifierKind::Svm, 0.7),
      cell("E", "tc02", "synthetic", false, ClassifierKind::NaiveBayes, 0.7),
  };
  const auto best = bestPerTestCase(results);
  REQUIRE(best.size() == 2);
  CHECK(best[0].cell.classifier == ClassifierKind::Mlp);
  CHECK(best[0].cell.accuracy == doctest::Approx(0.9));
  CHECK(best[0].candidates == 2);
  CHECK(best[1].cell.classifier == ClassifierKind::NaiveBayes);
}

TEST_CASE("failed cells are not candidates") {
  auto bad = cell("E", "tc01", "people", false, ClassifierKind::DecisionTree, 0.99);
  bad.error = "no vectors";
  const auto best = bestPerTestCase({bad, cell("E", "tc01", "people", false, ClassifierKind::Knn, 0.6)});
  REQUIRE(best.size() == 1);
  CHECK(best[0].cell.classifier == ClassifierKind::Knn);
  CHECK(best[0].candidates == 1);
  CHECK(bestPerTestCase({bad}).empty());
}

TEST_CASE("quartiles interpolate linearly") {
  const auto s = summarize({4, 1, 3, 2});
  CHECK(s.count == 4);
  CHECK(s.min == 1);
  CHECK(s.q1 == doctest::Approx(1.75));
  CHECK(s.median == doctest::Approx(2.5));
  CHECK(s.q3 == doctest::Approx(3.25));
  CHECK(s.max == 4);
  CHECK(s.mean == doctest::Approx(2.5));
  CHECK(summarize({}).count == 0);
  CHECK(summarize({7}).median == 7);
}

TEST_CASE("hard cells stay out of the domain aggregate") {
  TempDir dir;
  emitReports({cell("E", "tc01", "people", false, ClassifierKind::Knn, 0.6),
               cell("E", "tc01", "people", true, ClassifierKind::Knn, 0.9),
               cell("E", "tc02", "people", false, ClassifierKind::Knn, 0.8)},
              dir.path());
  const auto rows = readCsv(dir / "domain_aggregate.csv");
  REQUIRE(rows.size() == 2);
  CHECK(rows[0] == std::vector<std::string>{"embedding", "domain", "size", "count", "min", "q1",
                                            "median", "q3", "max", "mean"});
  CHECK(rows[1][3] == "2");
  CHECK(rows[1][8] == "0.800000");
  CHECK(rows[1][9] == "0.700000");
}

TEST_CASE("per-classifier files round-trip") {
  TempDir dir;
  Rng rng(1);
  auto results = randomResults(rng);
  results[3].error = "broken, with \"quotes\"";
  writeAccuracyPerClassifier(results, dir / "a.csv");
  const auto back = readAccuracyPerClassifier(dir / "a.csv");
  REQUIRE(back.size() == results.size());
  std::size_t errors = 0;
  for (const auto& r : back) {
    errors += !r.ok();
    if (r.ok()) CHECK(r.nTest == 20);
  }
  CHECK(errors == 1);
  writeText(dir / "bad.csv", "nope\n");
  CHECK_THROWS_AS(readAccuracyPerClassifier(dir / "bad.csv"), ParseError);
}

TEST_CASE("property: the four files agree with each other") {
  Rng rng(8);
  for (int round = 0; round < 20; ++round) {
    TempDir dir;
    const auto results = randomResults(rng);
    const auto files = emitReports(results, dir.path());
    CHECK(files.size() == 4);

    // Oracle: best accuracy per group from the per-classifier file.
    std::map<std::string, double> maxAcc;
    const auto per = readCsv(dir / "accuracy_per_classifier.csv");
    for (std::size_t i = 1; i < per.size(); ++i) {
      const auto key = per[i][0] + "|" + per[i][1] + "|" + per[i][2] + "|" + per[i][3] + "|" + per[i][4];
      maxAcc[key] = std::max(maxAcc[key], std::stod(per[i][6]));
    }
    const auto best = readCsv(dir / "best_per_testcase.csv");
    CHECK(best.size() == maxAcc.size() + 1);
    std::map<std::string, std::size_t> perBenchmark;
    for (std::size_t i = 1; i < best.size(); ++i) {
      const auto key = best[i][0] + "|" + best[i][1] + "|" + best[i][2] + "|" + best[i][3] + "|" + best[i][4];
      CHECK(std::stod(best[i][6]) == maxAcc.at(key));
      ++perBenchmark[best[i][0] + "|" + (best[i][2] == "synthetic" ? "synthetic" : "dbpedia")];
    }
    std::map<std::string, std::size_t> counted;
    const auto counts = readCsv(dir / "best_classifier_counts.csv");
    CHECK(counts.size() == 1 + 2 * 2 * 6);
    for (std::size_t i = 1; i < counts.size(); ++i) counted[counts[i][0] + "|" + counts[i][1]] += std::stoul(counts[i][3]);
    CHECK(counted == perBenchmark);
  }
}

TEST_CASE("empty input is rejected") {
  TempDir dir;
  CHECK_THROWS_AS(emitReports({}, dir.path()), ValidationError);
}

}
