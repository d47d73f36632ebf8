#include "dlcc/graph.hpp"

#include <algorithm>

#include "dlcc/error.hpp"

namespace dlcc {

namespace {

bool isSchemeChar(char c, bool first) {
  const bool alpha = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
  if (first) return alpha;
  return alpha || (c >= '0' && c <= '9') || c == '+' || c == '-' || c == '.';
}

}  // namespace

bool Uri::isValid(std::string_view value) {
  if (value.empty()) return false;
  const auto colon = value.find(':');
  if (colon == std::string_view::npos || colon == 0) return false;
  for (std::size_t i = 0; i < colon; ++i) {
    if (!isSchemeChar(value[i], i == 0)) return false;
  }
  for (unsigned char c : value) {
    if (c <= 0x20 || c == 0x7f || c == '<' || c == '>' || c == '"') return false;
  }
  return true;
}

Uri::Uri(std::string value) : value_(std::move(value)) {
  if (!isValid(value_)) throw ValidationError("malformed URI: '" + value_ + "'");
}

std::optional<Uri> Uri::tryParse(std::string_view value) {
  if (!isValid(value)) return std::nullopt;
  return Uri(Unchecked{}, std::string(value));
}

KnowledgeGraph::KnowledgeGraph(Uri typeRelation) {
  typeId_ = intern(typeRelation);
}

TermId KnowledgeGraph::intern(const Uri& u) {
  auto [it, inserted] = ids_.try_emplace(u.str(), static_cast<TermId>(terms_.size()));
  if (inserted) terms_.push_back(u);
  return it->second;
}

std::optional<TermId> KnowledgeGraph::find(const Uri& u) const {
  auto it = ids_.find(u.str());
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

bool KnowledgeGraph::insertEdge(Index& index, TermId node, Edge edge) {
  auto& edges = index[node];
  auto pos = std::lower_bound(edges.begin(), edges.end(), edge);
  if (pos != edges.end() && *pos == edge) return false;
  edges.insert(pos, edge);
  return true;
}

bool KnowledgeGraph::eraseEdge(Index& index, TermId node, Edge edge) {
  auto it = index.find(node);
  if (it == index.end()) return false;
  auto& edges = it->second;
  auto pos = std::lower_bound(edges.begin(), edges.end(), edge);
  if (pos == edges.end() || *pos != edge) return false;
  edges.erase(pos);
  if (edges.empty()) index.erase(it);
  return true;
}

bool KnowledgeGraph::add(TermId s, TermId r, TermId o) {
  if (!insertEdge(forward_, s, {r, o})) return false;
  insertEdge(inverse_, o, {r, s});
  ++size_;
  return true;
}

bool KnowledgeGraph::add(const Triple& t) {
  const TermId s = intern(t.subject);
  const TermId r = intern(t.relation);
  const TermId o = intern(t.object);
  return add(s, r, o);
}

bool KnowledgeGraph::remove(TermId s, TermId r, TermId o) {
  if (!eraseEdge(forward_, s, {r, o})) return false;
  eraseEdge(inverse_, o, {r, s});
  --size_;
  return true;
}

bool KnowledgeGraph::remove(const Triple& t) {
  auto s = find(t.subject), r = find(t.relation), o = find(t.object);
  if (!s || !r || !o) return false;
  return remove(*s, *r, *o);
}

bool KnowledgeGraph::contains(TermId s, TermId r, TermId o) const {
  auto edges = slice(forward_, s);
  return std::binary_search(edges.begin(), edges.end(), Edge{r, o});
}

bool KnowledgeGraph::contains(const Triple& t) const {
  auto s = find(t.subject), r = find(t.relation), o = find(t.object);
  return s && r && o && contains(*s, *r, *o);
}

std::span<const KnowledgeGraph::Edge> KnowledgeGraph::slice(const Index& index,
                                                            TermId node) {
  auto it = index.find(node);
  if (it == index.end()) return {};
  return it->second;
}

std::span<const KnowledgeGraph::Edge> KnowledgeGraph::slice(const Index& index,
                                                            TermId node, TermId r) {
  auto edges = slice(index, node);
  auto lo = std::lower_bound(edges.begin(), edges.end(), Edge{r, 0});
  auto hi = std::lower_bound(lo, edges.end(), Edge{r + 1, 0});
  return {lo, hi};
}

std::span<const KnowledgeGraph::Edge> KnowledgeGraph::outEdges(TermId s) const {
  return slice(forward_, s);
}
std::span<const KnowledgeGraph::Edge> KnowledgeGraph::inEdges(TermId o) const {
  return slice(inverse_, o);
}
std::span<const KnowledgeGraph::Edge> KnowledgeGraph::outEdges(TermId s, TermId r) const {
  return slice(forward_, s, r);
}
std::span<const KnowledgeGraph::Edge> KnowledgeGraph::inEdges(TermId o, TermId r) const {
  return slice(inverse_, o, r);
}

std::vector<Uri> KnowledgeGraph::neighbours(const Index& index, const Uri& e,
                                            const std::optional<Uri>& r) const {
  std::vector<Uri> out;
  auto node = find(e);
  if (!node) return out;
  std::span<const Edge> edges;
  if (r) {
    auto rid = find(*r);
    if (!rid) return out;
    edges = slice(index, *node, *rid);
  } else {
    edges = slice(index, *node);
  }
  out.reserve(edges.size());
  for (const auto& [rel, other] : edges) out.push_back(terms_[other]);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Uri> KnowledgeGraph::successors(const Uri& e, const std::optional<Uri>& r) const {
  return neighbours(forward_, e, r);
}

std::vector<Uri> KnowledgeGraph::predecessors(const Uri& e, const std::optional<Uri>& r) const {
  return neighbours(inverse_, e, r);
}

bool KnowledgeGraph::isIndividual(TermId id) const {
  if (forward_.contains(id)) return true;
  for (const auto& [rel, other] : slice(inverse_, id)) {
    if (rel != typeId_) return true;
  }
  return false;
}

std::vector<TermId> KnowledgeGraph::individualIds() const {
  std::vector<TermId> out;
  for (TermId id = 0; id < terms_.size(); ++id) {
    if (isIndividual(id)) out.push_back(id);
  }
  return out;
}

std::vector<Uri> KnowledgeGraph::individuals() const {
  std::vector<Uri> out;
  for (TermId id : individualIds()) out.push_back(terms_[id]);
  std::sort(out.begin(), out.end());
  return out;
}

void KnowledgeGraph::forEachTriple(
    const std::function<void(TermId, TermId, TermId)>& fn) const {
  for (const auto& [s, edges] : forward_) {
    for (const auto& [r, o] : edges) fn(s, r, o);
  }
}

std::vector<Triple> KnowledgeGraph::triples() const {
  std::vector<Triple> out;
  out.reserve(size_);
  forEachTriple([&](TermId s, TermId r, TermId o) {
    out.push_back(Triple{terms_[s], terms_[r], terms_[o]});
  });
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace dlcc
