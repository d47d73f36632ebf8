#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dlcc/graph.hpp"

namespace dlcc {

// The twelve test-case families.
//   tc01  ∃r.⊤          tc02  ∃r⁻¹.⊤        tc03  ∃r.⊤ ⊔ ∃r⁻¹.⊤
//   tc04  ∃R.{e} ⊔ ∃R⁻¹.{e}
//   tc05  ∃R1.(∃R2.{e}) ⊔ ∃R1⁻¹.(∃R2⁻¹.{e})      (two hops)
//   tc06  ∃r.{e}
//   tc07  ∃r.(∃type.T)   tc08  ∃r⁻¹.(∃type.T)
//   tc09  ≥n r.⊤         tc10  ≥n r⁻¹.⊤
//   tc11  ≥n r.(∃type.T) tc12  ≥n r⁻¹.(∃type.T)
enum class Family { Tc01 = 1, Tc02, Tc03, Tc04, Tc05, Tc06, Tc07, Tc08, Tc09, Tc10, Tc11, Tc12 };

inline constexpr std::array<Family, 12> kAllFamilies = {
    Family::Tc01, Family::Tc02, Family::Tc03, Family::Tc04, Family::Tc05, Family::Tc06,
    Family::Tc07, Family::Tc08, Family::Tc09, Family::Tc10, Family::Tc11, Family::Tc12};

std::string familyName(Family f);  // "tc01" ...
std::optional<Family> parseFamily(std::string_view name);

bool usesRelation(Family f);    // r bound
bool usesFocus(Family f);       // e
bool usesQualifier(Family f);   // T
bool usesMinCard(Family f);     // n
// Families whose pattern reads the relation against its direction.
bool isInverse(Family f);

struct ConstructorExpr {
  Family family = Family::Tc01;
  std::optional<Uri> relation;
  std::optional<Uri> focus;
  std::optional<Uri> qualifier;
  std::optional<int> minCard;

  static ConstructorExpr withRelation(Family f, Uri r);
  static ConstructorExpr withFocus(Family f, Uri e);
  static ConstructorExpr relationToFocus(Uri r, Uri e);
  static ConstructorExpr qualified(Family f, Uri r, Uri t);
  static ConstructorExpr cardinality(Family f, Uri r, int n);
  static ConstructorExpr qualifiedCardinality(Family f, Uri r, Uri t, int n);

  // Throws ValidationError unless exactly the family's fields are set and
  // minCard >= 1. (Generated gold standards use >= 2; 1 is accepted so the
  // degenerate forms can be compared against tc01/tc07.)
  void validate() const;

  // `tc07 r=<...> T=<...>`; fields in the order r, e, T, n.
  std::string canonical() const;
  static ConstructorExpr parse(std::string_view text);

  friend bool operator==(const ConstructorExpr&, const ConstructorExpr&) = default;
};

// Closed-world membership of `entity` in the class denoted by `x`.
bool matches(const KnowledgeGraph& g, const ConstructorExpr& x, const Uri& entity);

// Every individual of g (see KnowledgeGraph::individuals) that matches.
// Sorted.
std::vector<Uri> enumerate(const KnowledgeGraph& g, const ConstructorExpr& x);

// Id-level evaluator for hot loops. Resolves the expression's terms once;
// if a bound term does not occur in the graph nothing can match. Must be
// rebuilt if that term is interned later.
class Matcher {
 public:
  Matcher(const KnowledgeGraph& g, const ConstructorExpr& x);
  bool operator()(TermId entity) const;
  const ConstructorExpr& expr() const noexcept { return expr_; }

 private:
  bool typedAsQualifier(TermId node) const;

  const KnowledgeGraph& g_;
  ConstructorExpr expr_;
  bool resolvable_ = true;
  TermId relation_ = 0;
  TermId focus_ = 0;
  TermId qualifier_ = 0;
  std::size_t minCard_ = 1;
};

// Entities whose membership under some family can change when (s, r, o) is
// added to or removed from g: s, o and their one-hop neighbourhoods. The
// two-hop families reach exactly this far.
std::vector<TermId> potentiallyAffected(const KnowledgeGraph& g, TermId s, TermId o);

}  // namespace dlcc
