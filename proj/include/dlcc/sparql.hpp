#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dlcc/constructors.hpp"

namespace dlcc {

enum class Polarity { Positive, Negative, HardNegative };

inline constexpr std::array<Polarity, 3> kAllPolarities = {Polarity::Positive, Polarity::Negative,
                                                          Polarity::HardNegative};

// "positive", "negative", "hard_negative"; also the template file stems.
std::string polarityName(Polarity p);
std::optional<Polarity> parsePolarity(std::string_view name);

inline constexpr std::array<std::string_view, 6> kDomains = {"people", "books",  "cities",
                                                             "albums", "movies", "species"};
bool isKnownDomain(std::string_view domain);

// Placeholders are written ${name}; names are class, r, e, T and T_hard.
struct QuerySpec {
  Family testCase = Family::Tc01;
  std::string domain;
  Polarity polarity = Polarity::Positive;
  std::string templateText;
  std::map<std::string, std::string> bindings;
};

// Pure substitution. Throws RenderError naming the first unbound
// placeholder, or on an unterminated "${".
std::string renderQuery(const QuerySpec& spec);

// Swaps subject and object of every triple pattern whose predicate is not
// `a`, leaving layout untouched. Used to derive the inverse families.
std::string invertTemplate(std::string_view text);

// Collapses whitespace runs to one space and trims.
std::string normalizeWhitespace(std::string_view text);

// The template body plus the PREFIX declarations the templates rely on.
std::string withPrefixes(std::string_view query);

// Templates live under <dir>/templates/<tcXX>/<polarity>.sparql and per-domain
// bindings under <dir>/domains/<domain>.json. The inverse families tc02, tc08,
// tc10 and tc12 have no files of their own; their templates are the inverted
// tc01, tc07, tc09 and tc11 ones.
class QueryCatalog {
 public:
  explicit QueryCatalog(std::filesystem::path dir = DLCC_QUERY_DIR);

  const std::filesystem::path& dir() const noexcept { return dir_; }
  bool hasHardNegative(Family f) const;
  // Throws RenderError ("none defined") for a missing hard-negative variant.
  std::string templateFor(Family f, Polarity p) const;
  std::map<std::string, std::string> bindingsFor(Family f, std::string_view domain) const;
  QuerySpec spec(Family f, std::string_view domain, Polarity p) const;
  std::string render(Family f, std::string_view domain, Polarity p) const {
    return renderQuery(spec(f, domain, p));
  }

 private:
  std::filesystem::path dir_;
};

}  // namespace dlcc
