#include "dlcc/synth.hpp"

#include <algorithm>
#include <array>

#include "json.hpp"

#include "dlcc/digest.hpp"
#include "dlcc/error.hpp"
#include "dlcc/gold_io.hpp"
#include "dlcc/ntriples.hpp"

namespace dlcc {

namespace fs = std::filesystem;

namespace {

std::size_t propertyIndex(const Ontology& o, const Uri& property) {
  if (auto i = o.propertyIndex(property)) return *i;
  throw GenerationError("relation not in ontology: " + property.str());
}

std::size_t instanceIndex(const Ontology& o, const Uri& u) {
  if (auto i = o.instanceIndex(u)) return *i;
  throw GenerationError("not a generated instance: " + u.str());
}

// Two subtrees are either nested or disjoint. Returns the deeper of the
// domain and range classes when nested, tree.size() when disjoint.
std::size_t tc03PoolClass(const ClassTree& tree, const PropertyDef& def) {
  if (tree.inSubtree(def.range, def.domain)) return def.range;
  if (tree.inSubtree(def.domain, def.range)) return def.domain;
  return tree.size();
}

void internExprTerms(KnowledgeGraph& g, const ConstructorExpr& x) {
  if (x.relation) g.intern(*x.relation);
  if (x.focus) g.intern(*x.focus);
  if (x.qualifier) g.intern(*x.qualifier);
}

}  // namespace

ConstructorExpr chooseBinding(const Ontology& o, Family family, std::size_t n, Rng& rng,
                              int minCard) {
  const std::size_t need = 2 * n;
  const std::size_t card = static_cast<std::size_t>(minCard);
  const std::string name = familyName(family);

  if (family == Family::Tc04 || family == Family::Tc05) {
    if (o.instances().size() < need + 2)
      throw GenerationError(name + ": need at least " + std::to_string(need + 2) + " instances");
    const auto& e = o.instances()[rng.index(o.instances().size())];
    return ConstructorExpr::withFocus(family, e.uri);
  }

  auto inSubtree = [&](std::size_t c) { return o.instancesInSubtree(c).size(); };
  auto ofType = [&](std::size_t c) { return o.instancesOfType(c).size(); };
  const bool inverse = isInverse(family);
  std::vector<std::size_t> candidates;
  for (std::size_t p = 0; p < o.properties().size(); ++p) {
    const auto& def = o.properties()[p];
    const std::size_t entityClass = inverse ? def.range : def.domain;
    const std::size_t otherClass = inverse ? def.domain : def.range;
    const std::size_t extra = family == Family::Tc06 ? 1 : 0;
    if (inSubtree(entityClass) < need + extra) continue;
    bool ok = false;
    switch (family) {
      case Family::Tc01: case Family::Tc02:
        ok = inSubtree(otherClass) >= 2;
        break;
      case Family::Tc03:
        // Both endpoints of a pattern edge become members, so positives are
        // linked to each other and must fit either side of r.
        if (const auto pc = tc03PoolClass(o.tree(), def); pc < o.tree().size())
          ok = inSubtree(pc) >= need;
        break;
      case Family::Tc06:
        ok = inSubtree(otherClass) >= 1;
        break;
      case Family::Tc07: case Family::Tc08:
        ok = ofType(otherClass) >= 2;
        break;
      case Family::Tc09: case Family::Tc10:
        ok = inSubtree(otherClass) >= card + 1;
        break;
      case Family::Tc11: case Family::Tc12:
        ok = ofType(otherClass) >= card + 1;
        break;
      default:
        break;
    }
    if (ok) candidates.push_back(p);
  }
  if (candidates.empty())
    throw GenerationError(name + ": no property has enough compatible instances for " +
                          std::to_string(n) + " positives and " + std::to_string(n) + " negatives");

  const auto& def = o.properties()[rng.pick(candidates)];
  const auto& tree = o.tree();
  switch (family) {
    case Family::Tc06: {
      auto pool = o.instancesInSubtree(def.range);
      return ConstructorExpr::relationToFocus(def.property, o.instances()[pool[rng.index(pool.size())]].uri);
    }
    case Family::Tc07:
      return ConstructorExpr::qualified(family, def.property, tree.uri(def.range));
    case Family::Tc08:
      return ConstructorExpr::qualified(family, def.property, tree.uri(def.domain));
    case Family::Tc09: case Family::Tc10:
      return ConstructorExpr::cardinality(family, def.property, minCard);
    case Family::Tc11:
      return ConstructorExpr::qualifiedCardinality(family, def.property, tree.uri(def.range), minCard);
    case Family::Tc12:
      return ConstructorExpr::qualifiedCardinality(family, def.property, tree.uri(def.domain), minCard);
    default:
      return ConstructorExpr::withRelation(family, def.property);
  }
}

void ProtectedGraph::protect(const ConstructorExpr& expr, const std::vector<TermId>& positives) {
  guards_.push_back(Guard{Matcher(g_, expr), {positives.begin(), positives.end()}});
}

bool ProtectedGraph::tryAdd(TermId s, TermId r, TermId o) {
  if (s == o) return false;
  if (!g_.add(s, r, o)) return false;
  for (TermId a : potentiallyAffected(g_, s, o)) {
    if (!g_.isIndividual(a)) continue;
    for (const auto& guard : guards_) {
      if (!guard.positives.contains(a) && guard.matcher(a)) {
        g_.remove(s, r, o);
        return false;
      }
    }
  }
  return true;
}

LabeledExamples instantiateTestCase(KnowledgeGraph& g, const Ontology& o,
                                    const ConstructorExpr& expr, std::size_t n, Rng& rng,
                                    InstantiationStats* stats) {
  expr.validate();
  internExprTerms(g, expr);
  const Family family = expr.family;
  const std::string name = familyName(family);
  const auto& instances = o.instances();
  const auto& tree = o.tree();

  std::vector<TermId> ids;
  ids.reserve(instances.size());
  for (const auto& inst : instances) ids.push_back(g.intern(inst.uri));

  std::optional<PropertyDef> def;
  TermId rel = 0;
  if (expr.relation) {
    def = o.properties()[propertyIndex(o, *expr.relation)];
    rel = g.intern(*expr.relation);
  }
  std::optional<std::size_t> focus;
  if (expr.focus) focus = instanceIndex(o, *expr.focus);

  // Entity pool.
  std::vector<std::size_t> pool;
  if (family == Family::Tc04 || family == Family::Tc05) {
    for (std::size_t i = 0; i < instances.size(); ++i) pool.push_back(i);
  } else {
    std::size_t poolClass = isInverse(family) ? def->range : def->domain;
    if (family == Family::Tc03) {
      poolClass = tc03PoolClass(tree, *def);
      if (poolClass == tree.size())
        throw GenerationError(name + ": domain and range of " + def->property.str() + " are disjoint");
    }
    auto span = o.instancesInSubtree(poolClass);
    pool.assign(span.begin(), span.end());
  }
  if (focus) pool.erase(std::remove(pool.begin(), pool.end(), *focus), pool.end());
  if (pool.size() < 2 * n)
    throw GenerationError(name + ": only " + std::to_string(pool.size()) +
                          " compatible instances for " + std::to_string(2 * n) + " examples");

  const auto picked = rng.sampleIndices(pool.size(), 2 * n);
  std::vector<std::size_t> positives, negatives;
  for (std::size_t i = 0; i < picked.size(); ++i) (i < n ? positives : negatives).push_back(pool[picked[i]]);

  std::vector<TermId> positiveIds;
  for (std::size_t p : positives) positiveIds.push_back(ids[p]);
  ProtectedGraph pg(g);
  pg.protect(expr, positiveIds);

  std::optional<std::size_t> qualifierClass;
  if (expr.qualifier) qualifierClass = tree.indexOf(*expr.qualifier);
  const std::size_t card = expr.minCard ? static_cast<std::size_t>(*expr.minCard) : 1;

  auto compatibleProperties = [&](std::size_t subjectType, std::size_t objectType) {
    std::vector<std::size_t> out;
    for (std::size_t p : o.propertiesFrom(subjectType)) {
      if (tree.inSubtree(objectType, o.properties()[p].range)) out.push_back(p);
    }
    return out;
  };
  auto propertyId = [&](std::size_t p) { return g.intern(o.properties()[p].property); };
  auto drawFrom = [&](std::span<const std::size_t> span) { return span[rng.index(span.size())]; };

  using Edge = std::array<TermId, 3>;
  // One attempt at the pattern for positive p; empty means "retry".
  auto pattern = [&](std::size_t p) -> std::vector<Edge> {
    const TermId pid = ids[p];
    const std::size_t ptype = instances[p].type;
    switch (family) {
      case Family::Tc01:
        return {{pid, rel, ids[drawFrom(o.instancesInSubtree(def->range))]}};
      case Family::Tc02:
        return {{ids[drawFrom(o.instancesInSubtree(def->domain))], rel, pid}};
      case Family::Tc03: {
        const TermId partner = positiveIds[rng.index(positiveIds.size())];
        if (rng.index(2) == 1) return {{partner, rel, pid}};
        return {{pid, rel, partner}};
      }
      case Family::Tc04: {
        const std::size_t etype = instances[*focus].type;
        const bool outgoing = rng.index(2) == 0;
        auto props = outgoing ? compatibleProperties(ptype, etype) : compatibleProperties(etype, ptype);
        if (props.empty()) return {};
        const TermId r = propertyId(rng.pick(props));
        if (outgoing) return {{pid, r, ids[*focus]}};
        return {{ids[*focus], r, pid}};
      }
      case Family::Tc05: {
        const std::size_t z = rng.index(instances.size());
        if (z == p || z == *focus) return {};
        const std::size_t ztype = instances[z].type;
        const std::size_t etype = instances[*focus].type;
        if (rng.index(2) == 0) {  // p -> z -> e
          auto first = compatibleProperties(ptype, ztype);
          auto second = compatibleProperties(ztype, etype);
          if (first.empty() || second.empty()) return {};
          return {{pid, propertyId(rng.pick(first)), ids[z]},
                  {ids[z], propertyId(rng.pick(second)), ids[*focus]}};
        }
        // e -> z -> p
        auto first = compatibleProperties(ztype, ptype);
        auto second = compatibleProperties(etype, ztype);
        if (first.empty() || second.empty()) return {};
        return {{ids[z], propertyId(rng.pick(first)), pid},
                {ids[*focus], propertyId(rng.pick(second)), ids[z]}};
      }
      case Family::Tc06:
        return {{pid, rel, ids[*focus]}};
      case Family::Tc07: case Family::Tc08: case Family::Tc09:
      case Family::Tc10: case Family::Tc11: case Family::Tc12: {
        const bool inverse = isInverse(family);
        std::span<const std::size_t> others =
            qualifierClass ? o.instancesOfType(*qualifierClass)
                           : o.instancesInSubtree(inverse ? def->domain : def->range);
        if (others.size() < card) return {};
        std::vector<Edge> edges;
        for (std::size_t k : rng.sampleIndices(others.size(), card)) {
          const TermId y = ids[others[k]];
          edges.push_back(inverse ? Edge{y, rel, pid} : Edge{pid, rel, y});
        }
        return edges;
      }
    }
    return {};
  };

  Matcher member(g, expr);
  for (std::size_t p : positives) {
    // tc03 partners may already have been linked.
    if (family == Family::Tc03 && member(ids[p])) continue;
    bool placed = false;
    for (int attempt = 0; attempt < kMaxEdgeAttempts && !placed; ++attempt) {
      auto edges = pattern(p);
      if (edges.empty()) continue;
      std::size_t added = 0;
      for (; added < edges.size(); ++added) {
        const auto& [s, r, obj] = edges[added];
        if (!pg.tryAdd(s, r, obj)) break;
      }
      if (added == edges.size()) {
        placed = true;
        if (stats) stats->patternEdges += edges.size();
      } else {
        for (std::size_t i = 0; i < added; ++i) g.remove(edges[i][0], edges[i][1], edges[i][2]);
      }
    }
    if (!placed)
      throw GenerationError(name + ": could not instantiate the pattern for " + instances[p].uri.str());
  }

  LabeledExamples out;
  out.testCase = family;
  out.expr = expr;
  for (std::size_t p : positives) out.positives.push_back(instances[p].uri);
  for (std::size_t q : negatives) out.negatives.push_back(instances[q].uri);
  std::sort(out.positives.begin(), out.positives.end());
  std::sort(out.negatives.begin(), out.negatives.end());
  return out;
}

LabeledExamples instantiateTestCase(KnowledgeGraph& g, const Ontology& ontology, Family family,
                                    std::size_t n, Rng& rng, int minCard,
                                    InstantiationStats* stats) {
  const auto expr = chooseBinding(ontology, family, n, rng, minCard);
  return instantiateTestCase(g, ontology, expr, n, rng, stats);
}

void populateRandomEdges(KnowledgeGraph& g, const Ontology& o,
                         const std::vector<LabeledExamples>& active, int maxTriplesPerNode,
                         Rng& rng, InstantiationStats* stats) {
  if (maxTriplesPerNode < 1) throw ValidationError("maxTriplesPerNode must be >= 1");
  ProtectedGraph pg(g);
  std::vector<std::size_t> subjects;
  std::unordered_set<std::size_t> seen;
  for (const auto& ex : active) {
    if (!ex.expr) throw ValidationError("populateRandomEdges needs expressions");
    internExprTerms(g, *ex.expr);
    std::vector<TermId> pos;
    for (const auto& p : ex.positives) pos.push_back(g.intern(p));
    pg.protect(*ex.expr, pos);
    for (const auto* list : {&ex.positives, &ex.negatives}) {
      for (const auto& u : *list) {
        const std::size_t i = instanceIndex(o, u);
        if (seen.insert(i).second) subjects.push_back(i);
      }
    }
  }

  const auto& instances = o.instances();
  std::vector<TermId> propertyIds;
  for (const auto& p : o.properties()) propertyIds.push_back(g.intern(p.property));

  for (std::size_t s : subjects) {
    const TermId sid = g.intern(instances[s].uri);
    const auto& usable = o.propertiesFrom(instances[s].type);
    const auto slots = rng.between(1, maxTriplesPerNode);
    for (std::int64_t slot = 0; slot < slots; ++slot) {
      bool added = false;
      for (int attempt = 0; attempt < kMaxEdgeAttempts && !added; ++attempt) {
        const std::size_t p = rng.pick(usable);
        auto objects = o.instancesInSubtree(o.properties()[p].range);
        if (objects.empty()) continue;
        const std::size_t obj = objects[rng.index(objects.size())];
        added = pg.tryAdd(sid, propertyIds[p], g.intern(instances[obj].uri));
      }
      if (stats) ++(added ? stats->noiseEdges : stats->abandonedSlots);
    }
  }
}

SyntheticGoldStandard generateSynthetic(const SynthParams& params, double trainFraction,
                                        const UriScheme& scheme) {
  params.validate();
  Rng rng(params.seed);
  auto tree = generateClassTree(params.numClasses, params.branchingFactor, rng, scheme);
  auto properties = generateProperties(params.numProperties, tree, params.skewStop, rng, scheme);
  auto instances = populateClasses(params.numInstances, tree, rng, scheme);
  SyntheticGoldStandard gs{params, Ontology(std::move(tree), std::move(properties), std::move(instances)), {}};

  KnowledgeGraph base;
  gs.ontology.addTypeTriples(base);
  const auto n = static_cast<std::size_t>(params.numNodesInterest);
  for (Family f : kAllFamilies) {
    SyntheticTestCase tc{{}, {}, base, {}};
    const auto expr = chooseBinding(gs.ontology, f, n, rng);
    tc.examples = instantiateTestCase(tc.graph, gs.ontology, expr, n, rng, &tc.stats);
    populateRandomEdges(tc.graph, gs.ontology, {tc.examples}, params.maxTriplesPerNode, rng, &tc.stats);
    if (enumerate(tc.graph, expr) != tc.examples.positives)
      throw GenerationError(familyName(f) + ": members of the generated graph differ from the designated positives");
    tc.split = splitStratified(tc.examples, trainFraction, rng.next());
    gs.testCases.push_back(std::move(tc));
  }
  return gs;
}

fs::path writeSynthetic(const SyntheticGoldStandard& gs, const fs::path& outDir,
                        const WriteOptions& options) {
  const fs::path root = outDir / options.versionTag;
  if (fs::exists(root) && !fs::is_empty(root)) {
    if (!options.overwrite) throw Error("output directory exists and is not empty: " + root.string());
    fs::remove_all(root);
  }
  fs::create_directories(root);

  nlohmann::json bindings = nlohmann::json::object();
  nlohmann::json stats = nlohmann::json::object();
  const std::string size = std::to_string(gs.params.numNodesInterest);
  for (const auto& tc : gs.testCases) {
    const std::string name = familyName(tc.examples.testCase);
    const fs::path dir = root / name / "synthetic" / size;
    fs::create_directories(dir);
    writeUriList(dir / "positives.txt", tc.examples.positives);
    writeUriList(dir / "negatives.txt", tc.examples.negatives);
    writeSplitCsv(dir / "train.csv", tc.split.train);
    writeSplitCsv(dir / "test.csv", tc.split.test);
    writeText(dir / "expr.txt", tc.examples.expr->canonical() + "\n");
    writeNTriples(tc.graph, dir / "graph.nt");
    bindings[name] = tc.examples.expr->canonical();
    stats[name] = {{"triples", tc.graph.size()},
                   {"patternEdges", tc.stats.patternEdges},
                   {"noiseEdges", tc.stats.noiseEdges},
                   {"abandonedSlots", tc.stats.abandonedSlots}};
  }
  writeNTriples(gs.ontology.schemaGraph(), root / "ontology.nt");

  const auto& p = gs.params;
  nlohmann::json manifest = {
      {"tool", "dlcc"},
      {"toolVersion", options.toolVersion},
      {"goldStandardVersion", options.versionTag},
      {"subcommand", "generate-synthetic"},
      {"seed", p.seed},
      {"params",
       {{"numClasses", p.numClasses},
        {"numProperties", p.numProperties},
        {"numInstances", p.numInstances},
        {"branchingFactor", p.branchingFactor},
        {"maxTriplesPerNode", p.maxTriplesPerNode},
        {"numNodesInterest", p.numNodesInterest},
        {"skewStop", p.skewStop},
        {"seed", p.seed},
        {"trainFraction", gs.testCases.empty() ? 0.8 : gs.testCases.front().split.trainFraction}}},
      {"bindings", bindings},
      {"stats", stats},
      {"files", digestTree(root, {"manifest.json"})},
  };
  if (options.timestamp) manifest["created"] = utcTimestamp();
  writeText(root / "manifest.json", manifest.dump(2) + "\n");
  return root;
}

fs::path generateSyntheticGoldStandard(const SynthParams& params, const fs::path& outDir,
                                       const WriteOptions& options, double trainFraction) {
  return writeSynthetic(generateSynthetic(params, trainFraction), outDir, options);
}

}  // namespace dlcc
