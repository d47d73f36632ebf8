#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "dlcc/constructors.hpp"
#include "dlcc/endpoint.hpp"
#include "dlcc/sparql.hpp"

namespace dlcc {

struct DbpediaOptions {
  std::vector<Family> testCases{kAllFamilies.begin(), kAllFamilies.end()};
  std::vector<std::string> domains{kDomains.begin(), kDomains.end()};
  std::vector<int> sizes{50, 500, 5000};
  std::uint64_t seed = 42;
  double trainFraction = 0.8;
  int jobs = 1;
  FetchOptions fetch;
  std::string versionTag = "v1";
  std::string toolVersion = DLCC_VERSION;
  bool timestamp = true;
  bool overwrite = false;
};

// Outcome of one (test case, domain, size) cell.
struct DbpediaCell {
  std::string testCase;
  std::string domain;
  int size = 0;
  std::string status;      // "ok", "skipped" or "error"
  std::string hardStatus;  // "ok", "skipped", "none-defined" or "error"
  std::string message;
  std::size_t positivesFound = 0;
  std::size_t negativesFound = 0;
  std::size_t hardFound = 0;
};

struct DbpediaBuildReport {
  std::filesystem::path root;
  std::vector<DbpediaCell> cells;
  std::vector<std::string> warnings;

  bool anyErrors() const;
};

// Fetches positives, negatives and (where defined) hard negatives for every
// requested (test case, domain) pair, drops positives from both negative
// sets, and writes one cell per size class:
//   <out>/<version>/<tcXX>/<domain>/<size>/
//     positives.txt negatives.txt train.csv test.csv
//     [hard_negatives.txt train_hard.csv test_hard.csv]
// Smaller size classes are prefixes of the same shuffled lists, so they nest.
// Cells without enough examples are skipped; fetch failures mark the pair's
// cells as errors. Both are recorded in manifest.json.
DbpediaBuildReport buildDbpediaGoldStandard(Transport& transport, const QueryCatalog& catalog,
                                            const DbpediaOptions& options,
                                            const std::filesystem::path& outDir);

// Writes <out>/queries/<tcXX>/<domain>/<polarity>.sparql for every defined
// query (prefix declarations included). No network access.
std::vector<std::filesystem::path> renderAllQueries(const QueryCatalog& catalog,
                                                    const std::vector<Family>& testCases,
                                                    const std::vector<std::string>& domains,
                                                    const std::filesystem::path& outDir);

}  // namespace dlcc
