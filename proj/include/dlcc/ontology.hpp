#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "dlcc/graph.hpp"
#include "dlcc/rng.hpp"

namespace dlcc {

struct SynthParams {
  int numClasses = 760;
  int numProperties = 1355;
  int numInstances = 10000;
  int branchingFactor = 5;
  int maxTriplesPerNode = 11;
  int numNodesInterest = 1000;
  double skewStop = 0.25;
  std::uint64_t seed = 42;

  // Throws ValidationError: all counts >= 1, skewStop in (0, 1].
  void validate() const;
};

// Namespace under which synthetic classes, properties and instances live.
struct UriScheme {
  std::string base = "http://dlcc.example.org/synthetic/";

  Uri classUri(std::size_t i) const { return Uri(base + "class/C" + std::to_string(i)); }
  Uri propertyUri(std::size_t i) const { return Uri(base + "property/P" + std::to_string(i)); }
  Uri instanceUri(std::size_t i) const { return Uri(base + "instance/I" + std::to_string(i)); }
};

// Rooted class hierarchy. Classes are addressed by index into `classes`.
class ClassTree {
 public:
  ClassTree() = default;
  ClassTree(std::vector<Uri> classes, std::size_t root,
            std::vector<std::vector<std::size_t>> children);

  std::size_t size() const noexcept { return classes_.size(); }
  std::size_t root() const noexcept { return root_; }
  const Uri& uri(std::size_t c) const { return classes_.at(c); }
  const std::vector<Uri>& classes() const noexcept { return classes_; }
  const std::vector<std::size_t>& children(std::size_t c) const { return children_.at(c); }
  std::optional<std::size_t> parent(std::size_t c) const;
  std::size_t depth(std::size_t c) const { return depth_.at(c); }
  std::size_t height() const;
  std::optional<std::size_t> indexOf(const Uri& u) const;

  // Pre-order numbering; the subtree of c is the interval
  // [preorder(c), preorder(c) + subtreeSize(c)).
  std::size_t preorder(std::size_t c) const { return preorder_.at(c); }
  std::size_t subtreeSize(std::size_t c) const { return subtreeSize_.at(c); }
  bool inSubtree(std::size_t node, std::size_t ancestor) const {
    return preorder_[node] >= preorder_[ancestor] &&
           preorder_[node] < preorder_[ancestor] + subtreeSize_[ancestor];
  }

 private:
  std::vector<Uri> classes_;
  std::size_t root_ = 0;
  std::vector<std::vector<std::size_t>> children_;
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> depth_;
  std::vector<std::size_t> preorder_;
  std::vector<std::size_t> subtreeSize_;
  std::unordered_map<std::string, std::size_t> byUri_;
};

struct PropertyDef {
  Uri property;
  std::size_t domain;  // class index
  std::size_t range;   // class index
};

// Class URIs are generated in order, one is drawn as root, and the rest are
// attached breadth-first with at most branchingFactor children per node.
ClassTree generateClassTree(int numClasses, int branchingFactor, Rng& rng,
                            const UriScheme& scheme = {});

struct DomainRangeDraw {
  std::size_t start;
  std::size_t result;
  std::size_t descents;
};

// Start at a uniformly random class; while a uniform draw exceeds stopProb
// and the class has children, descend to a uniformly random child.
DomainRangeDraw traceDomainRange(const ClassTree& tree, double stopProb, Rng& rng);
std::size_t drawDomainRange(const ClassTree& tree, double stopProb, Rng& rng);

// Property 0 spans root -> root; every later one draws domain then range.
std::vector<PropertyDef> generateProperties(int numProperties, const ClassTree& tree,
                                            double stopProb, Rng& rng,
                                            const UriScheme& scheme = {});

struct TypedInstance {
  Uri uri;
  std::size_t type;  // class index
};

// Each instance gets one uniformly drawn class.
std::vector<TypedInstance> populateClasses(int numInstances, const ClassTree& tree, Rng& rng,
                                           const UriScheme& scheme = {});

// The generated schema plus the lookups generation needs: instances grouped
// by class subtree (contiguous in pre-order) and by direct type, and the
// properties usable from each class.
class Ontology {
 public:
  Ontology(ClassTree tree, std::vector<PropertyDef> properties,
           std::vector<TypedInstance> instances);

  const ClassTree& tree() const noexcept { return tree_; }
  const std::vector<PropertyDef>& properties() const noexcept { return properties_; }
  const std::vector<TypedInstance>& instances() const noexcept { return instances_; }

  // Instance indices whose type lies in the subtree of class c.
  std::span<const std::size_t> instancesInSubtree(std::size_t c) const;
  // Instance indices typed exactly c.
  std::span<const std::size_t> instancesOfType(std::size_t c) const;
  // Property indices whose domain subtree contains class c.
  const std::vector<std::size_t>& propertiesFrom(std::size_t c) const { return fromClass_.at(c); }

  std::optional<std::size_t> instanceIndex(const Uri& u) const;
  std::optional<std::size_t> propertyIndex(const Uri& u) const;

  bool compatible(const PropertyDef& p, std::size_t subjectType, std::size_t objectType) const {
    return tree_.inSubtree(subjectType, p.domain) && tree_.inSubtree(objectType, p.range);
  }

  // Type triples for every instance, on top of whatever g already holds.
  void addTypeTriples(KnowledgeGraph& g) const;
  // rdfs:subClassOf, rdfs:domain and rdfs:range triples.
  KnowledgeGraph schemaGraph() const;

 private:
  ClassTree tree_;
  std::vector<PropertyDef> properties_;
  std::vector<TypedInstance> instances_;
  std::vector<std::size_t> byPreorder_;        // instance indices sorted by class pre-order
  std::vector<std::size_t> preorderKeys_;      // parallel: pre-order of each entry's class
  std::vector<std::vector<std::size_t>> byType_;
  std::vector<std::vector<std::size_t>> fromClass_;
  std::unordered_map<std::string, std::size_t> instanceByUri_;
  std::unordered_map<std::string, std::size_t> propertyByUri_;
};

}  // namespace dlcc
