#include "dlcc/dbpedia.hpp"

#include <algorithm>
#include <unordered_set>

#include "json.hpp"

#include "dlcc/digest.hpp"
#include "dlcc/error.hpp"
#include "dlcc/gold_io.hpp"
#include "dlcc/parallel.hpp"
#include "dlcc/rng.hpp"
#include "dlcc/split.hpp"

namespace dlcc {

namespace fs = std::filesystem;

bool DbpediaBuildReport::anyErrors() const {
  return std::any_of(cells.begin(), cells.end(), [](const DbpediaCell& c) {
    return c.status == "error" || c.hardStatus == "error";
  });
}

namespace {

struct PairOutcome {
  std::vector<DbpediaCell> cells;
  std::vector<std::string> warnings;
  nlohmann::json queries = nlohmann::json::object();
};

std::vector<Uri> without(const std::vector<Uri>& list, const std::vector<Uri>& drop) {
  std::unordered_set<std::string> banned;
  for (const auto& u : drop) banned.insert(u.str());
  std::vector<Uri> out;
  for (const auto& u : list) {
    if (!banned.contains(u.str())) out.push_back(u);
  }
  return out;
}

std::vector<Uri> prefix(const std::vector<Uri>& v, std::size_t n) {
  return {v.begin(), v.begin() + static_cast<std::ptrdiff_t>(std::min(n, v.size()))};
}

PairOutcome buildPair(Transport& transport, const QueryCatalog& catalog, Family f,
                      const std::string& domain, const DbpediaOptions& options,
                      const fs::path& root) {
  PairOutcome out;
  const std::string tc = familyName(f);
  const std::string key = tc + "/" + domain;
  std::vector<int> sizes = options.sizes;
  std::sort(sizes.begin(), sizes.end());
  sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
  const auto maxSize = static_cast<std::size_t>(sizes.back());
  const bool hasHard = catalog.hasHardNegative(f);

  auto cellsWith = [&](const std::string& status, const std::string& message) {
    for (int s : sizes) {
      out.cells.push_back({tc, domain, s, status, hasHard ? status : "none-defined", message});
    }
  };

  std::vector<Uri> positives, negatives, hard;
  try {
    auto fetch = [&](Polarity p, std::size_t limit) {
      const std::string query = catalog.render(f, domain, p);
      out.queries[polarityName(p)] = query;
      auto r = fetchExamples(transport, query, limit,
                             deriveSeed(options.seed, key + "/" + polarityName(p)), options.fetch);
      for (const auto& w : r.warnings) out.warnings.push_back(key + "/" + polarityName(p) + ": " + w);
      return std::move(r.uris);
    };
    positives = fetch(Polarity::Positive, maxSize);
    negatives = without(fetch(Polarity::Negative, maxSize + positives.size()), positives);
    if (hasHard) hard = without(fetch(Polarity::HardNegative, maxSize + positives.size()), positives);
  } catch (const Error& e) {
    cellsWith("error", e.what());
    return out;
  }

  for (int s : sizes) {
    const auto n = static_cast<std::size_t>(s);
    DbpediaCell cell{tc, domain, s, "ok", hasHard ? "ok" : "none-defined", "",
                     positives.size(), negatives.size(), hard.size()};
    if (positives.size() < n || negatives.size() < n) {
      cell.status = "skipped";
      cell.hardStatus = hasHard ? "skipped" : "none-defined";
      cell.message = "not enough examples: " + std::to_string(positives.size()) + " positives, " +
                     std::to_string(negatives.size()) + " negatives for size " + std::to_string(s);
      out.cells.push_back(std::move(cell));
      continue;
    }
    const fs::path dir = root / tc / domain / std::to_string(s);
    const auto pos = prefix(positives, n);
    const auto neg = prefix(negatives, n);
    writeUriList(dir / "positives.txt", pos);
    writeUriList(dir / "negatives.txt", neg);
    const std::string cellKey = key + "/" + std::to_string(s);
    auto split = splitStratified(pos, neg, options.trainFraction, deriveSeed(options.seed, cellKey + "/split"));
    writeSplitCsv(dir / "train.csv", split.train);
    writeSplitCsv(dir / "test.csv", split.test);
    if (hasHard) {
      if (hard.size() < n) {
        cell.hardStatus = "skipped";
        cell.message = "not enough hard negatives: " + std::to_string(hard.size()) + " for size " +
                       std::to_string(s);
      } else {
        const auto hn = prefix(hard, n);
        writeUriList(dir / "hard_negatives.txt", hn);
        auto hardSplit = splitStratified(pos, hn, options.trainFraction,
                                         deriveSeed(options.seed, cellKey + "/split_hard"));
        writeSplitCsv(dir / "train_hard.csv", hardSplit.train);
        writeSplitCsv(dir / "test_hard.csv", hardSplit.test);
      }
    }
    out.cells.push_back(std::move(cell));
  }
  return out;
}

}  // namespace

DbpediaBuildReport buildDbpediaGoldStandard(Transport& transport, const QueryCatalog& catalog,
                                            const DbpediaOptions& options, const fs::path& outDir) {
  if (options.sizes.empty()) throw ValidationError("no size classes requested");
  for (int s : options.sizes) {
    if (s < 1) throw ValidationError("size classes must be >= 1");
  }
  for (const auto& d : options.domains) {
    if (!isKnownDomain(d)) throw ValidationError("unknown domain: " + d);
  }

  DbpediaBuildReport report;
  report.root = outDir / options.versionTag;
  if (fs::exists(report.root) && !fs::is_empty(report.root)) {
    if (!options.overwrite)
      throw Error("output directory exists and is not empty: " + report.root.string());
    fs::remove_all(report.root);
  }
  fs::create_directories(report.root);

  std::vector<std::pair<Family, std::string>> pairs;
  for (Family f : options.testCases) {
    for (const auto& d : options.domains) pairs.emplace_back(f, d);
  }
  std::vector<PairOutcome> outcomes(pairs.size());
  parallelFor(pairs.size(), options.jobs, [&](std::size_t i) {
    outcomes[i] = buildPair(transport, catalog, pairs[i].first, pairs[i].second, options, report.root);
  });

  nlohmann::json queries = nlohmann::json::object();
  nlohmann::json cells = nlohmann::json::array();
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    auto& o = outcomes[i];
    queries[familyName(pairs[i].first)][pairs[i].second] = o.queries;
    for (const auto& c : o.cells) {
      cells.push_back({{"testCase", c.testCase},
                       {"domain", c.domain},
                       {"size", c.size},
                       {"status", c.status},
                       {"hardStatus", c.hardStatus},
                       {"message", c.message},
                       {"positivesFound", c.positivesFound},
                       {"negativesFound", c.negativesFound},
                       {"hardNegativesFound", c.hardFound}});
      report.cells.push_back(c);
    }
    report.warnings.insert(report.warnings.end(), o.warnings.begin(), o.warnings.end());
  }

  std::vector<std::string> tcNames;
  for (Family f : options.testCases) tcNames.push_back(familyName(f));
  nlohmann::json manifest = {
      {"tool", "dlcc"},
      {"toolVersion", options.toolVersion},
      {"goldStandardVersion", options.versionTag},
      {"subcommand", "generate-dbpedia"},
      {"endpoint", transport.describe()},
      {"seed", options.seed},
      {"params",
       {{"testCases", tcNames},
        {"domains", options.domains},
        {"sizes", options.sizes},
        {"trainFraction", options.trainFraction},
        {"poolFactor", options.fetch.poolFactor},
        {"pageSize", options.fetch.pageSize}}},
      {"queries", queries},
      {"cells", cells},
      {"warnings", report.warnings},
      {"files", digestTree(report.root, {"manifest.json"})},
  };
  if (options.timestamp) manifest["created"] = utcTimestamp();
  writeText(report.root / "manifest.json", manifest.dump(2) + "\n");
  return report;
}

std::vector<fs::path> renderAllQueries(const QueryCatalog& catalog,
                                       const std::vector<Family>& testCases,
                                       const std::vector<std::string>& domains,
                                       const fs::path& outDir) {
  std::vector<fs::path> written;
  for (Family f : testCases) {
    for (const auto& d : domains) {
      for (Polarity p : kAllPolarities) {
        if (p == Polarity::HardNegative && !catalog.hasHardNegative(f)) continue;
        const fs::path file = outDir / "queries" / familyName(f) / d / (polarityName(p) + ".sparql");
        writeText(file, withPrefixes(catalog.render(f, d, p)) + "\n");
        written.push_back(file);
      }
    }
  }
  return written;
}

}  // namespace dlcc
