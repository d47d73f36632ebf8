#include "dlcc/constructors.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>

#include "dlcc/error.hpp"

namespace dlcc {

std::string familyName(Family f) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "tc%02d", static_cast<int>(f));
  return buf;
}

std::optional<Family> parseFamily(std::string_view name) {
  if (name.size() != 4 || name.substr(0, 2) != "tc") return std::nullopt;
  int n = 0;
  auto [ptr, ec] = std::from_chars(name.data() + 2, name.data() + 4, n);
  if (ec != std::errc() || ptr != name.data() + 4 || n < 1 || n > 12) return std::nullopt;
  return static_cast<Family>(n);
}

bool usesRelation(Family f) { return f != Family::Tc04 && f != Family::Tc05; }
bool usesFocus(Family f) {
  return f == Family::Tc04 || f == Family::Tc05 || f == Family::Tc06;
}
bool usesQualifier(Family f) {
  return f == Family::Tc07 || f == Family::Tc08 || f == Family::Tc11 || f == Family::Tc12;
}
bool usesMinCard(Family f) { return static_cast<int>(f) >= 9; }
bool isInverse(Family f) {
  return f == Family::Tc02 || f == Family::Tc08 || f == Family::Tc10 || f == Family::Tc12;
}

ConstructorExpr ConstructorExpr::withRelation(Family f, Uri r) {
  ConstructorExpr x{.family = f, .relation = std::move(r)};
  x.validate();
  return x;
}

ConstructorExpr ConstructorExpr::withFocus(Family f, Uri e) {
  ConstructorExpr x{.family = f, .focus = std::move(e)};
  x.validate();
  return x;
}

ConstructorExpr ConstructorExpr::relationToFocus(Uri r, Uri e) {
  ConstructorExpr x{.family = Family::Tc06, .relation = std::move(r), .focus = std::move(e)};
  x.validate();
  return x;
}

ConstructorExpr ConstructorExpr::qualified(Family f, Uri r, Uri t) {
  ConstructorExpr x{.family = f, .relation = std::move(r), .qualifier = std::move(t)};
  x.validate();
  return x;
}

ConstructorExpr ConstructorExpr::cardinality(Family f, Uri r, int n) {
  ConstructorExpr x{.family = f, .relation = std::move(r), .minCard = n};
  x.validate();
  return x;
}

ConstructorExpr ConstructorExpr::qualifiedCardinality(Family f, Uri r, Uri t, int n) {
  ConstructorExpr x{.family = f, .relation = std::move(r), .qualifier = std::move(t), .minCard = n};
  x.validate();
  return x;
}

void ConstructorExpr::validate() const {
  const std::string name = familyName(family);
  auto check = [&](bool required, bool present, const char* field) {
    if (required && !present) throw ValidationError(name + ": missing " + field);
    if (!required && present) throw ValidationError(name + ": unexpected " + field);
  };
  check(usesRelation(family), relation.has_value(), "relation r");
  check(usesFocus(family), focus.has_value(), "focus entity e");
  check(usesQualifier(family), qualifier.has_value(), "type T");
  check(usesMinCard(family), minCard.has_value(), "cardinality n");
  if (minCard && *minCard < 1) throw ValidationError(name + ": cardinality must be >= 1");
}

std::string ConstructorExpr::canonical() const {
  validate();
  std::string out = familyName(family);
  if (relation) out += " r=<" + relation->str() + ">";
  if (focus) out += " e=<" + focus->str() + ">";
  if (qualifier) out += " T=<" + qualifier->str() + ">";
  if (minCard) out += " n=" + std::to_string(*minCard);
  return out;
}

ConstructorExpr ConstructorExpr::parse(std::string_view text) {
  auto fail = [&](const std::string& why) -> ValidationError {
    return ValidationError("bad constructor expression '" + std::string(text) + "': " + why);
  };
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\n' || s.back() == '\r'))
      s.remove_suffix(1);
    return s;
  };
  std::string_view rest = trim(text);
  std::vector<std::string_view> tokens;
  while (!rest.empty()) {
    auto sp = rest.find_first_of(" \t");
    tokens.push_back(rest.substr(0, sp));
    if (sp == std::string_view::npos) break;
    rest = trim(rest.substr(sp));
  }
  if (tokens.empty()) throw fail("empty");
  auto family = parseFamily(tokens[0]);
  if (!family) throw fail("unknown family");
  ConstructorExpr x{.family = *family};
  for (std::size_t i = 1; i < tokens.size(); ++i) {
    auto tok = tokens[i];
    auto eq = tok.find('=');
    if (eq == std::string_view::npos) throw fail("expected key=value");
    auto key = tok.substr(0, eq);
    auto value = tok.substr(eq + 1);
    if (key == "n") {
      int n = 0;
      auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), n);
      if (ec != std::errc() || ptr != value.data() + value.size()) throw fail("bad cardinality");
      x.minCard = n;
      continue;
    }
    if (value.size() < 2 || value.front() != '<' || value.back() != '>') throw fail("expected <IRI>");
    auto uri = Uri::tryParse(value.substr(1, value.size() - 2));
    if (!uri) throw fail("invalid IRI");
    if (key == "r") x.relation = *uri;
    else if (key == "e") x.focus = *uri;
    else if (key == "T") x.qualifier = *uri;
    else throw fail("unknown key");
  }
  x.validate();
  return x;
}

Matcher::Matcher(const KnowledgeGraph& g, const ConstructorExpr& x) : g_(g), expr_(x) {
  expr_.validate();
  auto resolve = [&](const std::optional<Uri>& u, TermId& slot) {
    if (!u) return;
    auto id = g.find(*u);
    if (id) slot = *id;
    else resolvable_ = false;
  };
  resolve(expr_.relation, relation_);
  resolve(expr_.focus, focus_);
  resolve(expr_.qualifier, qualifier_);
  if (expr_.minCard) minCard_ = static_cast<std::size_t>(*expr_.minCard);
}

bool Matcher::typedAsQualifier(TermId node) const {
  return g_.contains(node, g_.typeRelationId(), qualifier_);
}

namespace {

bool hasNeighbour(std::span<const KnowledgeGraph::Edge> edges, TermId node) {
  return std::any_of(edges.begin(), edges.end(),
                     [&](const auto& e) { return e.second == node; });
}

// Distinct neighbours in a single-relation slice; the slice is sorted by
// (relation, neighbour) so neighbours are already unique.
template <typename Pred>
std::size_t countNeighbours(std::span<const KnowledgeGraph::Edge> edges, std::size_t cap,
                            Pred pred) {
  std::size_t n = 0;
  for (const auto& e : edges) {
    if (pred(e.second) && ++n >= cap) break;
  }
  return n;
}

}  // namespace

bool Matcher::operator()(TermId x) const {
  if (!resolvable_) return false;
  const auto& g = g_;
  auto any = [](TermId) { return true; };
  auto typed = [this](TermId y) { return typedAsQualifier(y); };
  switch (expr_.family) {
    case Family::Tc01:
      return !g.outEdges(x, relation_).empty();
    case Family::Tc02:
      return !g.inEdges(x, relation_).empty();
    case Family::Tc03:
      return !g.outEdges(x, relation_).empty() || !g.inEdges(x, relation_).empty();
    case Family::Tc04:
      return hasNeighbour(g.outEdges(x), focus_) || hasNeighbour(g.inEdges(x), focus_);
    case Family::Tc05: {
      for (const auto& [r, z] : g.outEdges(x)) {
        if (hasNeighbour(g.outEdges(z), focus_)) return true;
      }
      for (const auto& [r, z] : g.inEdges(x)) {
        if (hasNeighbour(g.inEdges(z), focus_)) return true;
      }
      return false;
    }
    case Family::Tc06:
      return g.contains(x, relation_, focus_);
    case Family::Tc07:
      return countNeighbours(g.outEdges(x, relation_), 1, typed) >= 1;
    case Family::Tc08:
      return countNeighbours(g.inEdges(x, relation_), 1, typed) >= 1;
    case Family::Tc09:
      return countNeighbours(g.outEdges(x, relation_), minCard_, any) >= minCard_;
    case Family::Tc10:
      return countNeighbours(g.inEdges(x, relation_), minCard_, any) >= minCard_;
    case Family::Tc11:
      return countNeighbours(g.outEdges(x, relation_), minCard_, typed) >= minCard_;
    case Family::Tc12:
      return countNeighbours(g.inEdges(x, relation_), minCard_, typed) >= minCard_;
  }
  return false;
}

bool matches(const KnowledgeGraph& g, const ConstructorExpr& x, const Uri& entity) {
  Matcher m(g, x);
  auto id = g.find(entity);
  return id && m(*id);
}

std::vector<Uri> enumerate(const KnowledgeGraph& g, const ConstructorExpr& x) {
  Matcher m(g, x);
  std::vector<Uri> out;
  for (TermId id : g.individualIds()) {
    if (m(id)) out.push_back(g.term(id));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<TermId> potentiallyAffected(const KnowledgeGraph& g, TermId s, TermId o) {
  std::vector<TermId> out{s, o};
  for (TermId node : {s, o}) {
    for (const auto& [r, n] : g.outEdges(node)) out.push_back(n);
    for (const auto& [r, n] : g.inEdges(node)) out.push_back(n);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace dlcc
