#include <fstream>
#include <set>

#include "doctest.h"
#include "json.hpp"
#include "dlcc/digest.hpp"
#include "dlcc/error.hpp"
#include "dlcc/gold_io.hpp"
#include "dlcc/ntriples.hpp"
#include "dlcc/synth.hpp"
#include "support.hpp"

using namespace dlcc;
using namespace dlcc::test;

namespace {

SynthParams smallParams(std::uint64_t seed) {
  SynthParams p;
  p.numClasses = 30;
  p.numProperties = 40;
  p.numInstances = 600;
  p.branchingFactor = 3;
  p.maxTriplesPerNode = 5;
  p.numNodesInterest = 20;
  p.seed = seed;
  return p;
}

nlohmann::json manifestWithoutTimestamp(const fs::path& root) {
  auto j = nlohmann::json::parse(readText(root / "manifest.json"));
  j.erase("created");
  return j;
}

}  // namespace

TEST_SUITE("synth") {

TEST_CASE("property: every generated case has exactly its designated positives as members") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const auto gs = generateSynthetic(smallParams(seed));
    REQUIRE(gs.testCases.size() == 12);
    for (std::size_t i = 0; i < 12; ++i) {
      const auto& tc = gs.testCases[i];
      const auto& ex = tc.examples;
      INFO("seed ", seed, " ", ex.expr->canonical());
      CHECK(ex.testCase == kAllFamilies[i]);
      CHECK(ex.positives.size() == 20);
      CHECK(ex.negatives.size() == 20);
      CHECK_NOTHROW(ex.validate());
      const auto triples = tc.graph.triples();
      CHECK(sortedVector(oracleMembers(triples, *ex.expr)) == ex.positives);
      if (usesMinCard(ex.testCase)) CHECK(ex.expr->minCard == kDefaultMinCard);
    }
  }
}

TEST_CASE("property: every non-type edge respects domain and range") {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const auto gs = generateSynthetic(smallParams(seed));
    const auto& o = gs.ontology;
    for (const auto& tc : gs.testCases) {
      for (const auto& t : tc.graph.triples()) {
        if (t.relation == rdfType()) continue;
        const auto p = o.propertyIndex(t.relation);
        const auto s = o.instanceIndex(t.subject);
        const auto obj = o.instanceIndex(t.object);
        REQUIRE(p);
        REQUIRE(s);
        REQUIRE(obj);
        CHECK(o.compatible(o.properties()[*p], o.instances()[*s].type, o.instances()[*obj].type));
        CHECK(t.subject != t.object);
      }
    }
  }
}

TEST_CASE("entities of interest get between one and maxTriplesPerNode noise slots") {
  const auto gs = generateSynthetic(smallParams(4));
  for (const auto& tc : gs.testCases) {
    const auto& s = tc.stats;
    const std::size_t entities = tc.examples.positives.size() + tc.examples.negatives.size();
    const std::size_t slots = s.noiseEdges + s.abandonedSlots;
    CHECK(slots >= entities);
    CHECK(slots <= entities * 5);
    CHECK(s.patternEdges > 0);
  }
}

TEST_CASE("splits are 80/20 and stratified") {
  const auto gs = generateSynthetic(smallParams(2));
  for (const auto& tc : gs.testCases) {
    std::size_t trainPos = 0, testPos = 0;
    for (const auto& r : tc.split.train) trainPos += r.label;
    for (const auto& r : tc.split.test) testPos += r.label;
    CHECK(tc.split.train.size() == 32);
    CHECK(tc.split.test.size() == 8);
    CHECK(trainPos == 16);
    CHECK(testPos == 4);
  }
}

TEST_CASE("generation is a pure function of the parameters") {
  const auto a = generateSynthetic(smallParams(9));
  const auto b = generateSynthetic(smallParams(9));
  const auto c = generateSynthetic(smallParams(10));
  bool anyDiff = false;
  for (std::size_t i = 0; i < 12; ++i) {
    CHECK(a.testCases[i].graph.triples() == b.testCases[i].graph.triples());
    CHECK(a.testCases[i].examples.positives == b.testCases[i].examples.positives);
    CHECK(a.testCases[i].split.test == b.testCases[i].split.test);
    anyDiff = anyDiff || a.testCases[i].examples.positives != c.testCases[i].examples.positives;
  }
  CHECK(anyDiff);
}

TEST_CASE("the protected graph refuses edges that create unintended members") {
  KnowledgeGraph g;
  const auto a = g.intern(ex("a")), b = g.intern(ex("b")), c = g.intern(ex("c"));
  const auto r = g.intern(ex("r")), s = g.intern(ex("s"));
  const auto e = g.intern(ex("e")), z = g.intern(ex("z"));

  ProtectedGraph pg(g);
  pg.protect(ConstructorExpr::withRelation(Family::Tc01, ex("r")), {a});
  CHECK(pg.tryAdd(a, r, c));
  CHECK_FALSE(pg.tryAdd(b, r, c));
  CHECK_FALSE(g.contains(b, r, c));
  CHECK(pg.tryAdd(b, s, c));
  CHECK_FALSE(pg.tryAdd(a, r, a));    // self-loop
  CHECK_FALSE(pg.tryAdd(a, r, c));    // duplicate

  // Two hops: b -s-> z exists, so z -s-> e would make b a tc05 member.
  pg.protect(ConstructorExpr::withFocus(Family::Tc05, ex("e")), {a});
  CHECK(pg.tryAdd(b, s, z));
  CHECK_FALSE(pg.tryAdd(z, s, e));
  CHECK_FALSE(g.contains(z, s, e));
  CHECK(pg.tryAdd(a, s, z) == true);
  CHECK(enumerate(g, ConstructorExpr::withFocus(Family::Tc05, ex("e"))).empty());
}

TEST_CASE("binding fails loudly when the ontology is too small") {
  Rng rng(1);
  auto tree = generateClassTree(3, 2, rng);
  auto props = generateProperties(2, tree, 0.25, rng);
  auto inst = populateClasses(5, tree, rng);
  const Ontology o(tree, props, inst);
  for (auto f : {Family::Tc01, Family::Tc04, Family::Tc11}) {
    Rng r(2);
    try {
      chooseBinding(o, f, 10, r);
      FAIL("expected GenerationError");
    } catch (const GenerationError& e) {
      CHECK(std::string(e.what()).find(familyName(f)) != std::string::npos);
    }
  }
  SynthParams p = smallParams(1);
  p.numInstances = 10;
  CHECK_THROWS_AS(generateSynthetic(p), GenerationError);
}

TEST_CASE("written gold standards are byte-identical apart from the timestamp") {
  TempDir dir("dlcc-synth");
  const auto gs = generateSynthetic(smallParams(5));
  const auto a = writeSynthetic(gs, dir / "a");
  const auto b = generateSyntheticGoldStandard(smallParams(5), dir / "b");
  CHECK(digestTree(a, {"manifest.json"}) == digestTree(b, {"manifest.json"}));
  CHECK(manifestWithoutTimestamp(a) == manifestWithoutTimestamp(b));

  const auto m = nlohmann::json::parse(readText(a / "manifest.json"));
  CHECK(m.contains("created"));
  CHECK(m["seed"] == 5);
  CHECK(m["params"]["numNodesInterest"] == 20);
  CHECK(m["bindings"].size() == 12);
  CHECK(m["files"].size() == 12 * 6 + 1);

  const auto cell = a / "tc07" / "synthetic" / "20";
  CHECK(readUriList(cell / "positives.txt") == gs.testCases[6].examples.positives);
  CHECK(readSplitCsv(cell / "test.csv") == gs.testCases[6].split.test);
  CHECK(parseNTriples(cell / "graph.nt").triples() == gs.testCases[6].graph.triples());
  CHECK(ConstructorExpr::parse(readText(cell / "expr.txt")) == *gs.testCases[6].examples.expr);
  CHECK(parseNTriples(a / "ontology.nt").size() == gs.ontology.schemaGraph().size());

  CHECK_THROWS_AS(writeSynthetic(gs, dir / "a"), Error);
  WriteOptions force;
  force.overwrite = true;
  CHECK_NOTHROW(writeSynthetic(gs, dir / "a", force));
}

}
