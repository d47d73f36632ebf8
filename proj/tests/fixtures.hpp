#pragma once

#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "dlcc/sparql.hpp"

namespace dlcc::test {

// Canned endpoint rows for one (test case, domain): `positives` entities
// p0.., `negatives` entities n0.. plus the first `overlap` positives, and
// `hard` entities h0.. (only if the family defines hard negatives).
struct FixtureCounts {
  std::size_t positives = 60;
  std::size_t negatives = 120;
  std::size_t hard = 120;
  std::size_t overlap = 10;
};

inline std::vector<std::string> fixtureUris(const std::string& stem, std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back("http://dbpedia.org/resource/" + stem + std::to_string(i));
  return out;
}

inline void addFixtureRows(std::map<std::string, std::vector<std::string>>& rows,
                           const QueryCatalog& catalog, Family f, const std::string& domain,
                           const FixtureCounts& counts) {
  const std::string tag = familyName(f) + "_" + domain + "_";
  const auto pos = fixtureUris(tag + "p", counts.positives);
  auto neg = fixtureUris(tag + "n", counts.negatives);
  neg.insert(neg.end(), pos.begin(), pos.begin() + static_cast<std::ptrdiff_t>(std::min(counts.overlap, pos.size())));
  rows[catalog.render(f, domain, Polarity::Positive)] = pos;
  rows[catalog.render(f, domain, Polarity::Negative)] = neg;
  if (catalog.hasHardNegative(f)) {
    auto hard = fixtureUris(tag + "h", counts.hard);
    hard.insert(hard.end(), pos.begin(), pos.begin() + static_cast<std::ptrdiff_t>(std::min(counts.overlap, pos.size())));
    rows[catalog.render(f, domain, Polarity::HardNegative)] = hard;
  }
}

inline std::string fixtureJson(const std::map<std::string, std::vector<std::string>>& rows) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& [q, b] : rows) j.push_back({{"query", q}, {"bindings", b}});
  return j.dump(1);
}

}  // namespace dlcc::test
