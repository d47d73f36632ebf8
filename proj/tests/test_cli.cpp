#include <fstream>
#include <set>

#include "doctest.h"
#include "cli.hpp"
#include "dlcc/digest.hpp"
#include "dlcc/gold_io.hpp"
#include "dlcc/reports.hpp"
#include "fixtures.hpp"
#include "support.hpp"

using namespace dlcc;
using namespace dlcc::test;

namespace {

std::vector<std::string> smallSynth(const fs::path& out) {
  return {"generate-synthetic", "--num-classes",  "20", "--num-properties", "30", "--num-instances",
          "300",                "--num-nodes-interest", "10", "--max-triples-per-node", "4",
          "--seed",             "5", "--out", out.string()};
}

// Every URI that appears in a positives or negatives file below root.
std::set<std::string> goldUris(const fs::path& root) {
  std::set<std::string> out;
  for (const auto& entry : fs::recursive_directory_iterator(root)) {
    const auto name = entry.path().filename().string();
    if (name != "positives.txt" && name != "negatives.txt") continue;
    for (const auto& u : readUriList(entry.path())) out.insert(u.str());
  }
  return out;
}

void writeEmbedding(const fs::path& file, const std::set<std::string>& uris, std::uint64_t seed) {
  Rng rng(seed);
  std::ofstream out(file);
  for (const auto& u : uris) out << u << ' ' << rng.normal() << ' ' << rng.normal() << ' ' << rng.normal() << '\n';
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("usage errors exit 2 and help exits 0") {
  TempDir dir("dlcc-cli");
  auto args = smallSynth(dir / "gold");
  args[2] = "0";
  CHECK(runCli(args) == kExitUsage);
  CHECK(runCli({"frobnicate"}) == kExitUsage);
  CHECK(runCli({}) == kExitUsage);
  CHECK(runCli({"evaluate", "--gold", dir.path().string()}) == kExitUsage);
  CHECK(runCli({"generate-dbpedia", "--domains", "planets", "--render-only", "--out", dir.path().string()}) ==
        kExitUsage);
  CHECK(runCli({"--help"}) == kExitOk);
  CHECK(runCli({"generate-synthetic", "--help"}) == kExitOk);
}

TEST_CASE("generate-synthetic is reproducible and refuses to overwrite") {
  TempDir dir("dlcc-cli");
  REQUIRE(runCli(smallSynth(dir / "a")) == kExitOk);
  REQUIRE(runCli(smallSynth(dir / "b")) == kExitOk);
  const auto a = digestTree(dir / "a" / "v1", {"manifest.json"});
  const auto b = digestTree(dir / "b" / "v1", {"manifest.json"});
  CHECK(a.size() == 73);
  CHECK(a == b);

  CHECK(runCli(smallSynth(dir / "a")) == kExitFailure);
  auto forced = smallSynth(dir / "a");
  forced.push_back("--force");
  CHECK(runCli(forced) == kExitOk);
  CHECK(digestTree(dir / "a" / "v1", {"manifest.json"}) == b);
}

TEST_CASE("generate-synthetic reads a config file and flags override it") {
  TempDir dir("dlcc-cli");
  {
    std::ofstream cfg(dir / "params.cfg");
    cfg << "# small run\nnumClasses = 20\nnumProperties = 30\nnumInstances = 300\n"
        << "numNodesInterest = 10\nmaxTriplesPerNode = 4\nseed = 99\n";
  }
  const std::string cfg = (dir / "params.cfg").string();
  REQUIRE(runCli({"generate-synthetic", "--config", cfg, "--seed", "5", "--out", (dir / "a").string()}) ==
          kExitOk);
  REQUIRE(runCli(smallSynth(dir / "b")) == kExitOk);
  CHECK(digestTree(dir / "a" / "v1", {"manifest.json"}) == digestTree(dir / "b" / "v1", {"manifest.json"}));

  {
    std::ofstream bad(dir / "bad.cfg");
    bad << "numWidgets = 3\n";
  }
  CHECK(runCli({"generate-synthetic", "--config", (dir / "bad.cfg").string(), "--out",
                (dir / "c").string()}) == kExitUsage);
}

TEST_CASE("evaluate writes reports and report re-emits them") {
  TempDir dir("dlcc-cli");
  REQUIRE(runCli(smallSynth(dir / "gold")) == kExitOk);
  const auto gold = dir / "gold" / "v1";
  writeEmbedding(dir / "emb.txt", goldUris(gold), 1);

  const std::vector<std::string> eval = {"evaluate",    "--gold", gold.string(), "--embedding",
                                         "rand=" + (dir / "emb.txt").string(), "--classifiers",
                                         "naiveBayes,decisionTree,knn",   "--out"};
  auto first = eval;
  first.push_back((dir / "r1").string());
  auto second = eval;
  second.push_back((dir / "r2").string());
  REQUIRE(runCli(first) == kExitOk);
  REQUIRE(runCli(second) == kExitOk);
  for (const char* f : {"accuracy_per_classifier.csv", "best_per_testcase.csv", "domain_aggregate.csv",
                        "best_classifier_counts.csv", "manifest.json"})
    CHECK(fs::exists(dir / "r1" / f));
  CHECK(digestTree(dir / "r1", {"manifest.json"}) == digestTree(dir / "r2", {"manifest.json"}));
  CHECK(readAccuracyPerClassifier(dir / "r1" / "accuracy_per_classifier.csv").size() == 36);

  REQUIRE(runCli({"report", "--input", (dir / "r1" / "accuracy_per_classifier.csv").string(), "--out",
                  (dir / "r3").string()}) == kExitOk);
  for (const char* f : {"accuracy_per_classifier.csv", "best_per_testcase.csv", "domain_aggregate.csv",
                        "best_classifier_counts.csv"})
    CHECK(readText(dir / "r3" / f) == readText(dir / "r1" / f));

  CHECK(runCli({"evaluate", "--gold", gold.string(), "--embedding", "x=" + (dir / "nope.txt").string()}) ==
        kExitUsage);
  auto badKind = eval;
  badKind[6] = "naiveBayes,perceptron";
  badKind.push_back((dir / "r4").string());
  CHECK(runCli(badKind) == kExitUsage);
}

TEST_CASE("evaluate fails on a missing vector under the error policy") {
  TempDir dir("dlcc-cli");
  REQUIRE(runCli(smallSynth(dir / "gold")) == kExitOk);
  const auto gold = dir / "gold" / "v1";
  auto uris = goldUris(gold);
  uris.erase(uris.begin());
  writeEmbedding(dir / "emb.txt", uris, 2);
  const std::vector<std::string> base = {"evaluate", "--gold", gold.string(), "--embedding",
                                         "rand=" + (dir / "emb.txt").string(), "--classifiers", "naiveBayes"};
  auto strict = base;
  strict.insert(strict.end(), {"--out", (dir / "r1").string()});
  CHECK(runCli(strict) == kExitFailure);
  auto lenient = base;
  lenient.insert(lenient.end(), {"--missing", "zero", "--out", (dir / "r2").string()});
  CHECK(runCli(lenient) == kExitOk);
  auto wrong = base;
  wrong.insert(wrong.end(), {"--missing", "ignore", "--out", (dir / "r3").string()});
  CHECK(runCli(wrong) == kExitUsage);
}

TEST_CASE("generate-dbpedia against an unreachable endpoint exits 1") {
  TempDir dir("dlcc-cli");
  CHECK(runCli({"generate-dbpedia", "--endpoint", "http://127.0.0.1:1/sparql", "--test-cases", "tc01",
                "--domains", "people", "--sizes", "50", "--retry-backoff-ms", "1", "--out",
                dir.path().string()}) == kExitFailure);
}

TEST_CASE("generate-dbpedia render-only writes query files without network") {
  TempDir dir("dlcc-cli");
  REQUIRE(runCli({"generate-dbpedia", "--endpoint", "http://127.0.0.1:1/sparql", "--render-only",
                  "--test-cases", "tc01,tc03", "--domains", "people,books", "--out",
                  dir.path().string()}) == kExitOk);
  // tc01 has three polarities, tc03 two.
  std::size_t files = 0;
  for (const auto& e : fs::recursive_directory_iterator(dir / "queries"))
    if (e.is_regular_file()) ++files;
  CHECK(files == 2 * (3 + 2));
  CHECK(fs::exists(dir / "queries" / "tc01" / "people" / "hard_negative.sparql"));
  CHECK_FALSE(fs::exists(dir / "queries" / "tc03" / "people" / "hard_negative.sparql"));
}

TEST_CASE("generate-dbpedia from a fixture file") {
  TempDir dir("dlcc-cli");
  const QueryCatalog catalog;
  std::map<std::string, std::vector<std::string>> rows;
  addFixtureRows(rows, catalog, Family::Tc01, "people", {});
  writeText(dir / "fixture.json", fixtureJson(rows));
  const std::vector<std::string> args = {"generate-dbpedia", "--endpoint",
                                         "fixture:" + (dir / "fixture.json").string(),
                                         "--test-cases", "tc01", "--domains", "people", "--sizes", "50",
                                         "--out", (dir / "gold").string()};
  REQUIRE(runCli(args) == kExitOk);
  const auto cell = dir / "gold" / "v1" / "tc01" / "people" / "50";
  CHECK(readUriList(cell / "positives.txt").size() == 50);
  CHECK(readUriList(cell / "negatives.txt").size() == 50);
  CHECK(readUriList(cell / "hard_negatives.txt").size() == 50);

  // A domain the fixture does not cover returns no rows, so its cell is skipped.
  auto other = args;
  other[6] = "books";
  other.back() = (dir / "gold2").string();
  CHECK(runCli(other) == kExitOk);
  CHECK_FALSE(fs::exists(dir / "gold2" / "v1" / "tc01" / "books" / "50" / "positives.txt"));
}

}  // TEST_SUITE
