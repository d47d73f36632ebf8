#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace dlcc {

// An absolute IRI. Construction validates: non-empty, a scheme prefix, and
// no whitespace, control characters, '<', '>' or '"'.
class Uri {
 public:
  explicit Uri(std::string value);

  static std::optional<Uri> tryParse(std::string_view value);
  static bool isValid(std::string_view value);

  const std::string& str() const noexcept { return value_; }

  friend auto operator<=>(const Uri&, const Uri&) = default;
  friend bool operator==(const Uri&, const Uri&) = default;

 private:
  struct Unchecked {};
  Uri(Unchecked, std::string value) : value_(std::move(value)) {}

  std::string value_;
};

inline const Uri& rdfType() {
  static const Uri type{"http://www.w3.org/1999/02/22-rdf-syntax-ns#type"};
  return type;
}

struct Triple {
  Uri subject;
  Uri relation;
  Uri object;

  friend auto operator<=>(const Triple&, const Triple&) = default;
  friend bool operator==(const Triple&, const Triple&) = default;
};

using TermId = std::uint32_t;

// In-memory triple store with forward (subject -> relation -> objects) and
// inverse (object -> relation -> subjects) adjacency. Terms are interned;
// the id-level accessors are what the membership oracle runs on.
//
// Mutation is single-owner; concurrent const access is safe.
class KnowledgeGraph {
 public:
  // (relation, neighbour), sorted.
  using Edge = std::pair<TermId, TermId>;

  explicit KnowledgeGraph(Uri typeRelation = rdfType());

  // Returns true if the triple was not present before.
  bool add(const Triple& t);
  bool add(TermId s, TermId r, TermId o);
  // Returns true if the triple was present. Terms whose last triple goes
  // away drop out of both indices.
  bool remove(const Triple& t);
  bool remove(TermId s, TermId r, TermId o);
  bool contains(const Triple& t) const;
  bool contains(TermId s, TermId r, TermId o) const;

  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }

  const Uri& typeRelation() const noexcept { return terms_[typeId_]; }
  TermId typeRelationId() const noexcept { return typeId_; }

  // Set-valued neighbourhood queries; a missing relation means "any
  // relation". Results are sorted and duplicate-free.
  std::vector<Uri> successors(const Uri& e,
                              const std::optional<Uri>& r = std::nullopt) const;
  std::vector<Uri> predecessors(const Uri& e,
                                const std::optional<Uri>& r = std::nullopt) const;

  // Id level. intern() never fails; find() does not insert.
  TermId intern(const Uri& u);
  std::optional<TermId> find(const Uri& u) const;
  const Uri& term(TermId id) const { return terms_.at(id); }
  std::size_t termCount() const noexcept { return terms_.size(); }

  std::span<const Edge> outEdges(TermId s) const;
  std::span<const Edge> inEdges(TermId o) const;
  // Neighbours over one relation, as a contiguous sorted slice.
  std::span<const Edge> outEdges(TermId s, TermId r) const;
  std::span<const Edge> inEdges(TermId o, TermId r) const;

  bool hasOut(TermId s) const { return forward_.contains(s); }
  bool hasIn(TermId o) const { return inverse_.contains(o); }

  // Every term that is a subject of some triple or the object of a non-type
  // triple. Class terms that only occur as type objects are excluded; this
  // is the domain the constructor oracle enumerates over.
  bool isIndividual(TermId id) const;
  std::vector<TermId> individualIds() const;
  std::vector<Uri> individuals() const;

  // All triples, sorted lexicographically by (subject, relation, object).
  std::vector<Triple> triples() const;

  void forEachTriple(const std::function<void(TermId, TermId, TermId)>& fn) const;

 private:
  using Index = std::unordered_map<TermId, std::vector<Edge>>;

  static bool insertEdge(Index& index, TermId node, Edge edge);
  static bool eraseEdge(Index& index, TermId node, Edge edge);
  static std::span<const Edge> slice(const Index& index, TermId node);
  static std::span<const Edge> slice(const Index& index, TermId node, TermId r);
  std::vector<Uri> neighbours(const Index& index, const Uri& e,
                              const std::optional<Uri>& r) const;

  std::vector<Uri> terms_;
  std::unordered_map<std::string, TermId> ids_;
  TermId typeId_;
  Index forward_;
  Index inverse_;
  std::size_t size_ = 0;
};

}  // namespace dlcc
