#include "dlcc/ontology.hpp"

#include <algorithm>
#include <deque>

#include "dlcc/error.hpp"

namespace dlcc {

void SynthParams::validate() const {
  auto positive = [](int v, const char* name) {
    if (v < 1) throw ValidationError(std::string(name) + " must be >= 1");
  };
  positive(numClasses, "numClasses");
  positive(numProperties, "numProperties");
  positive(numInstances, "numInstances");
  positive(branchingFactor, "branchingFactor");
  positive(maxTriplesPerNode, "maxTriplesPerNode");
  positive(numNodesInterest, "numNodesInterest");
  if (!(skewStop > 0.0 && skewStop <= 1.0)) throw ValidationError("skewStop must be in (0, 1]");
}

ClassTree::ClassTree(std::vector<Uri> classes, std::size_t root,
                     std::vector<std::vector<std::size_t>> children)
    : classes_(std::move(classes)), root_(root), children_(std::move(children)) {
  const std::size_t n = classes_.size();
  if (n == 0 || root_ >= n || children_.size() != n) throw ValidationError("malformed class tree");
  parent_.assign(n, n);
  depth_.assign(n, 0);
  preorder_.assign(n, n);
  subtreeSize_.assign(n, 1);
  for (std::size_t c = 0; c < n; ++c) {
    byUri_.emplace(classes_[c].str(), c);
    for (std::size_t child : children_[c]) {
      if (child >= n || parent_[child] != n || child == root_)
        throw ValidationError("class tree node with two parents");
      parent_[child] = c;
    }
  }
  // Iterative pre-order walk; also detects disconnected nodes.
  std::vector<std::size_t> stack{root_};
  std::vector<std::size_t> order;
  order.reserve(n);
  while (!stack.empty()) {
    const std::size_t c = stack.back();
    stack.pop_back();
    preorder_[c] = order.size();
    order.push_back(c);
    const auto& kids = children_[c];
    for (auto it = kids.rbegin(); it != kids.rend(); ++it) {
      depth_[*it] = depth_[c] + 1;
      stack.push_back(*it);
    }
  }
  if (order.size() != n) throw ValidationError("class tree is not connected");
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (*it != root_) subtreeSize_[parent_[*it]] += subtreeSize_[*it];
  }
}

std::optional<std::size_t> ClassTree::parent(std::size_t c) const {
  if (parent_.at(c) == classes_.size()) return std::nullopt;
  return parent_[c];
}

std::size_t ClassTree::height() const {
  return depth_.empty() ? 0 : *std::max_element(depth_.begin(), depth_.end());
}

std::optional<std::size_t> ClassTree::indexOf(const Uri& u) const {
  auto it = byUri_.find(u.str());
  if (it == byUri_.end()) return std::nullopt;
  return it->second;
}

ClassTree generateClassTree(int numClasses, int branchingFactor, Rng& rng,
                            const UriScheme& scheme) {
  if (numClasses < 1 || branchingFactor < 1)
    throw ValidationError("class tree needs numClasses >= 1 and branchingFactor >= 1");
  const auto n = static_cast<std::size_t>(numClasses);
  std::vector<Uri> uris;
  uris.reserve(n);
  for (std::size_t i = 0; i < n; ++i) uris.push_back(scheme.classUri(i));

  const std::size_t root = rng.index(n);
  std::vector<std::vector<std::size_t>> children(n);
  std::deque<std::size_t> workList;
  std::size_t current = root;
  int attached = 0;
  for (std::size_t cls = 0; cls < n; ++cls) {
    if (cls == root) continue;
    if (attached == branchingFactor) {
      current = workList.front();
      workList.pop_front();
      attached = 0;
    }
    children[current].push_back(cls);
    ++attached;
    workList.push_back(cls);
  }
  return ClassTree(std::move(uris), root, std::move(children));
}

DomainRangeDraw traceDomainRange(const ClassTree& tree, double stopProb, Rng& rng) {
  DomainRangeDraw d{};
  d.start = rng.index(tree.size());
  d.result = d.start;
  while (rng.uniform() > stopProb && !tree.children(d.result).empty()) {
    d.result = rng.pick(tree.children(d.result));
    ++d.descents;
  }
  return d;
}

std::size_t drawDomainRange(const ClassTree& tree, double stopProb, Rng& rng) {
  return traceDomainRange(tree, stopProb, rng).result;
}

std::vector<PropertyDef> generateProperties(int numProperties, const ClassTree& tree,
                                            double stopProb, Rng& rng,
                                            const UriScheme& scheme) {
  std::vector<PropertyDef> out;
  out.reserve(static_cast<std::size_t>(std::max(numProperties, 0)));
  for (int i = 0; i < numProperties; ++i) {
    PropertyDef p{scheme.propertyUri(static_cast<std::size_t>(i)), tree.root(), tree.root()};
    if (i > 0) {
      p.domain = drawDomainRange(tree, stopProb, rng);
      p.range = drawDomainRange(tree, stopProb, rng);
    }
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<TypedInstance> populateClasses(int numInstances, const ClassTree& tree, Rng& rng,
                                           const UriScheme& scheme) {
  std::vector<TypedInstance> out;
  out.reserve(static_cast<std::size_t>(std::max(numInstances, 0)));
  for (int i = 0; i < numInstances; ++i) {
    out.push_back({scheme.instanceUri(static_cast<std::size_t>(i)), rng.index(tree.size())});
  }
  return out;
}

Ontology::Ontology(ClassTree tree, std::vector<PropertyDef> properties,
                   std::vector<TypedInstance> instances)
    : tree_(std::move(tree)), properties_(std::move(properties)), instances_(std::move(instances)) {
  byType_.resize(tree_.size());
  byPreorder_.resize(instances_.size());
  for (std::size_t i = 0; i < instances_.size(); ++i) {
    byType_.at(instances_[i].type).push_back(i);
    byPreorder_[i] = i;
    instanceByUri_.emplace(instances_[i].uri.str(), i);
  }
  std::stable_sort(byPreorder_.begin(), byPreorder_.end(), [&](std::size_t a, std::size_t b) {
    return tree_.preorder(instances_[a].type) < tree_.preorder(instances_[b].type);
  });
  preorderKeys_.reserve(byPreorder_.size());
  for (std::size_t i : byPreorder_) preorderKeys_.push_back(tree_.preorder(instances_[i].type));

  fromClass_.resize(tree_.size());
  for (std::size_t p = 0; p < properties_.size(); ++p) {
    propertyByUri_.emplace(properties_[p].property.str(), p);
    const std::size_t d = properties_[p].domain;
    if (d >= tree_.size() || properties_[p].range >= tree_.size())
      throw ValidationError("property outside class tree: " + properties_[p].property.str());
    for (std::size_t c = 0; c < tree_.size(); ++c) {
      if (tree_.inSubtree(c, d)) fromClass_[c].push_back(p);
    }
  }
}

std::span<const std::size_t> Ontology::instancesInSubtree(std::size_t c) const {
  const std::size_t lo = tree_.preorder(c);
  const std::size_t hi = lo + tree_.subtreeSize(c);
  auto first = std::lower_bound(preorderKeys_.begin(), preorderKeys_.end(), lo);
  auto last = std::lower_bound(first, preorderKeys_.end(), hi);
  return {byPreorder_.data() + (first - preorderKeys_.begin()),
          static_cast<std::size_t>(last - first)};
}

std::optional<std::size_t> Ontology::instanceIndex(const Uri& u) const {
  auto it = instanceByUri_.find(u.str());
  if (it == instanceByUri_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> Ontology::propertyIndex(const Uri& u) const {
  auto it = propertyByUri_.find(u.str());
  if (it == propertyByUri_.end()) return std::nullopt;
  return it->second;
}

std::span<const std::size_t> Ontology::instancesOfType(std::size_t c) const {
  return byType_.at(c);
}

void Ontology::addTypeTriples(KnowledgeGraph& g) const {
  const TermId type = g.typeRelationId();
  std::vector<TermId> classIds;
  classIds.reserve(tree_.size());
  for (const auto& c : tree_.classes()) classIds.push_back(g.intern(c));
  for (const auto& inst : instances_) g.add(g.intern(inst.uri), type, classIds[inst.type]);
}

KnowledgeGraph Ontology::schemaGraph() const {
  static const Uri subClassOf{"http://www.w3.org/2000/01/rdf-schema#subClassOf"};
  static const Uri domain{"http://www.w3.org/2000/01/rdf-schema#domain"};
  static const Uri range{"http://www.w3.org/2000/01/rdf-schema#range"};
  KnowledgeGraph g;
  for (std::size_t c = 0; c < tree_.size(); ++c) {
    if (auto p = tree_.parent(c)) g.add({tree_.uri(c), subClassOf, tree_.uri(*p)});
  }
  for (const auto& p : properties_) {
    g.add({p.property, domain, tree_.uri(p.domain)});
    g.add({p.property, range, tree_.uri(p.range)});
  }
  return g;
}

}  // namespace dlcc
