#pragma once

#include <filesystem>
#include <string>
#include <unordered_set>
#include <vector>

#include "dlcc/constructors.hpp"
#include "dlcc/graph.hpp"
#include "dlcc/ontology.hpp"
#include "dlcc/rng.hpp"
#include "dlcc/split.hpp"

namespace dlcc {

// Cardinality bound used by the published gold standards.
inline constexpr int kDefaultMinCard = 2;
// Candidate edges tried per slot before the slot is abandoned.
inline constexpr int kMaxEdgeAttempts = 50;

// Picks concrete r/e/T for a family. r is uniform among properties whose
// entity-side class subtree (domain, or range for inverse families) holds at
// least 2n instances and whose other side can host the pattern; e is a
// uniform instance (from r's range subtree for tc06); T is the range class
// of r (tc07/tc11) or its domain class (tc08/tc12). Throws GenerationError
// naming the family when nothing qualifies.
ConstructorExpr chooseBinding(const Ontology& ontology, Family family, std::size_t n,
                              Rng& rng, int minCard = kDefaultMinCard);

// A graph under construction that refuses edges which would turn an entity
// into an unintended member of any registered expression.
class ProtectedGraph {
 public:
  ProtectedGraph(KnowledgeGraph& g) : g_(g) {}

  // Terms of `expr` must already be interned in the graph.
  void protect(const ConstructorExpr& expr, const std::vector<TermId>& positives);

  // Adds (s, r, o) unless it is a self-loop, already present, or would make
  // a non-positive entity match a protected expression. Returns whether the
  // edge is now in the graph.
  bool tryAdd(TermId s, TermId r, TermId o);

  KnowledgeGraph& graph() noexcept { return g_; }

 private:
  struct Guard {
    Matcher matcher;
    std::unordered_set<TermId> positives;
  };
  KnowledgeGraph& g_;
  std::vector<Guard> guards_;
};

struct InstantiationStats {
  std::size_t patternEdges = 0;
  std::size_t noiseEdges = 0;
  std::size_t abandonedSlots = 0;
};

// Designates n positives and n negatives from the expression's entity pool
// and adds the minimal edges that make each positive satisfy it. The graph
// must already contain the ontology's type triples.
LabeledExamples instantiateTestCase(KnowledgeGraph& g, const Ontology& ontology,
                                    const ConstructorExpr& expr, std::size_t n, Rng& rng,
                                    InstantiationStats* stats = nullptr);
// Overload that draws the binding first.
LabeledExamples instantiateTestCase(KnowledgeGraph& g, const Ontology& ontology, Family family,
                                    std::size_t n, Rng& rng, int minCard = kDefaultMinCard,
                                    InstantiationStats* stats = nullptr);

// For each entity of interest (positives and negatives of every entry),
// draws k in [1, maxTriplesPerNode] and adds up to k domain/range-respecting
// edges with that entity as subject, skipping any edge that would create a
// member outside the designated positives of any entry.
void populateRandomEdges(KnowledgeGraph& g, const Ontology& ontology,
                         const std::vector<LabeledExamples>& active, int maxTriplesPerNode,
                         Rng& rng, InstantiationStats* stats = nullptr);

struct SyntheticTestCase {
  LabeledExamples examples;
  SplitGoldStandard split;
  KnowledgeGraph graph;
  InstantiationStats stats;
};

struct SyntheticGoldStandard {
  SynthParams params;
  Ontology ontology;
  std::vector<SyntheticTestCase> testCases;  // in family order
};

// The whole pipeline as a pure function of the parameters (seed included).
// Every test case gets its own graph over the shared ontology and typed
// instances. Verifies enumerate(graph, expr) == positives for each case.
SyntheticGoldStandard generateSynthetic(const SynthParams& params, double trainFraction = 0.8,
                                        const UriScheme& scheme = {});

struct WriteOptions {
  std::string versionTag = "v1";
  std::string toolVersion = DLCC_VERSION;
  bool timestamp = true;
  // Replace an existing non-empty version directory instead of failing.
  bool overwrite = false;
};

// Writes <outDir>/<version>/ with manifest.json, ontology.nt and one
// <tcXX>/synthetic/<size>/ directory per test case. Returns the version dir.
std::filesystem::path writeSynthetic(const SyntheticGoldStandard& gs,
                                     const std::filesystem::path& outDir,
                                     const WriteOptions& options = {});

std::filesystem::path generateSyntheticGoldStandard(const SynthParams& params,
                                                    const std::filesystem::path& outDir,
                                                    const WriteOptions& options = {},
                                                    double trainFraction = 0.8);

}  // namespace dlcc
