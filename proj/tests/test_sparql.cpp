#include "doctest.h"
#include "dlcc/error.hpp"
#include "dlcc/sparql.hpp"
#include "reference_queries.hpp"

using namespace dlcc;

TEST_SUITE("sparql") {

TEST_CASE("people queries match the published forms") {
  const QueryCatalog catalog;
  for (const auto& ref : test::kReferenceQueries) {
    if (ref.testCase == "tc03" && ref.polarity == "negative") continue;
    INFO(ref.testCase, " ", ref.polarity);
    const auto rendered = catalog.render(*parseFamily(ref.testCase), "people",
                                         *parsePolarity(ref.polarity));
    CHECK(normalizeWhitespace(rendered) == ref.text);
  }
}

TEST_CASE("tc03 negative keeps the published shape but selects entities") {
  const QueryCatalog catalog;
  const auto q = normalizeWhitespace(catalog.render(Family::Tc03, "people", Polarity::Negative));
  CHECK(q ==
        "SELECT DISTINCT(?x) WHERE { ?x a dbo:Person . FILTER(NOT EXISTS{ ?x dbo:child ?y} AND "
        "NOT EXISTS { ?z dbo:child ?x})}");
}

TEST_CASE("inverse families swap subject and object") {
  const QueryCatalog catalog;
  CHECK(normalizeWhitespace(catalog.render(Family::Tc02, "people", Polarity::Positive)) ==
        "SELECT DISTINCT(?x) WHERE { ?x a dbo:Person . ?y dbo:child ?x . }");
  CHECK(normalizeWhitespace(catalog.render(Family::Tc02, "people", Polarity::HardNegative)) ==
        "SELECT DISTINCT(?x) WHERE { ?x a dbo:Person . ?x dbo:child ?y. FILTER(NOT EXISTS { ?z "
        "dbo:child ?x})}");
  CHECK(invertTemplate("?x a dbo:Person . ?x dbo:team ?y . ?y a dbo:Team }") ==
        "?x a dbo:Person . ?y dbo:team ?x . ?y a dbo:Team }");
  CHECK(invertTemplate("{ ?x ${r} dbr:Foo.}") == "{ dbr:Foo ${r} ?x.}");
  // Involution on every template that has an inverse.
  for (auto f : {Family::Tc01, Family::Tc07, Family::Tc09, Family::Tc11}) {
    for (auto p : kAllPolarities) {
      const auto t = catalog.templateFor(f, p);
      CHECK(invertTemplate(invertTemplate(t)) == t);
    }
  }
}

TEST_CASE("every defined query renders for every domain") {
  const QueryCatalog catalog;
  for (auto domain : kDomains) {
    for (auto f : kAllFamilies) {
      for (auto p : kAllPolarities) {
        if (p == Polarity::HardNegative && !catalog.hasHardNegative(f)) continue;
        INFO(familyName(f), " ", domain, " ", polarityName(p));
        const auto q = catalog.render(f, domain, p);
        CHECK(q.find("${") == std::string::npos);
        CHECK(q.rfind("SELECT DISTINCT(?x)", 0) == 0);
      }
    }
  }
}

TEST_CASE("missing hard negatives are reported as none-defined") {
  const QueryCatalog catalog;
  CHECK_FALSE(catalog.hasHardNegative(Family::Tc03));
  CHECK_FALSE(catalog.hasHardNegative(Family::Tc05));
  CHECK(catalog.hasHardNegative(Family::Tc12));
  try {
    catalog.render(Family::Tc03, "people", Polarity::HardNegative);
    FAIL("expected RenderError");
  } catch (const RenderError& e) {
    CHECK(std::string(e.what()).find("none-defined") != std::string::npos);
  }
}

TEST_CASE("placeholders must be bound") {
  QuerySpec spec{.templateText = "SELECT ?x WHERE { ?x ${r} ?y }"};
  try {
    renderQuery(spec);
    FAIL("expected RenderError");
  } catch (const RenderError& e) {
    CHECK(std::string(e.what()).find("${r}") != std::string::npos);
  }
  spec.bindings["r"] = "dbo:child";
  CHECK(renderQuery(spec) == "SELECT ?x WHERE { ?x dbo:child ?y }");
  spec.templateText = "broken ${r";
  CHECK_THROWS_AS(renderQuery(spec), RenderError);
  const QueryCatalog catalog;
  CHECK_THROWS(catalog.bindingsFor(Family::Tc01, "planets"));
}

TEST_CASE("names and helpers") {
  for (auto p : kAllPolarities) CHECK(parsePolarity(polarityName(p)) == p);
  CHECK(polarityName(Polarity::HardNegative) == "hard_negative");
  CHECK(isKnownDomain("species"));
  CHECK_FALSE(isKnownDomain("planets"));
  CHECK(normalizeWhitespace("  a \n\t b  ") == "a b");
  const auto full = withPrefixes("SELECT ?x WHERE {}");
  CHECK(full.find("PREFIX dbo: <http://dbpedia.org/ontology/>") != std::string::npos);
  CHECK(full.find("PREFIX dbr: <http://dbpedia.org/resource/>") != std::string::npos);
}

}
