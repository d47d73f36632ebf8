#pragma once

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <unistd.h>

#include "dlcc/constructors.hpp"
#include "dlcc/graph.hpp"
#include "dlcc/rng.hpp"

namespace dlcc::test {

namespace fs = std::filesystem;

// Fresh directory below the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag = "dlcc") {
    static std::atomic<unsigned> counter{0};
    path_ = fs::temp_directory_path() /
            (tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const fs::path& path() const noexcept { return path_; }
  fs::path operator/(const std::string& name) const { return path_ / name; }

 private:
  fs::path path_;
};

inline Uri ex(const std::string& local) { return Uri("http://ex.org/" + local); }

// A small random graph over entities e0.., relations r0.. and classes c0..,
// with a type triple for most entities.
struct RandomGraphSpec {
  std::size_t entities = 12;
  std::size_t relations = 3;
  std::size_t classes = 3;
  std::size_t edges = 25;
};

inline std::vector<Triple> randomTriples(Rng& rng, const RandomGraphSpec& spec) {
  std::vector<Triple> out;
  for (std::size_t i = 0; i < spec.edges; ++i) {
    out.push_back({ex("e" + std::to_string(rng.index(spec.entities))),
                   ex("r" + std::to_string(rng.index(spec.relations))),
                   ex("e" + std::to_string(rng.index(spec.entities)))});
  }
  for (std::size_t i = 0; i < spec.entities; ++i) {
    if (rng.index(4) == 0) continue;
    out.push_back({ex("e" + std::to_string(i)), rdfType(),
                   ex("c" + std::to_string(rng.index(spec.classes)))});
  }
  return out;
}

inline KnowledgeGraph graphOf(const std::vector<Triple>& triples) {
  KnowledgeGraph g;
  for (const auto& t : triples) g.add(t);
  return g;
}

// A random, valid expression over the vocabulary of randomTriples.
inline ConstructorExpr randomExpr(Rng& rng, const RandomGraphSpec& spec, Family f) {
  ConstructorExpr x{.family = f};
  if (usesRelation(f)) x.relation = ex("r" + std::to_string(rng.index(spec.relations)));
  if (usesFocus(f)) x.focus = ex("e" + std::to_string(rng.index(spec.entities)));
  if (usesQualifier(f)) x.qualifier = ex("c" + std::to_string(rng.index(spec.classes)));
  if (usesMinCard(f)) x.minCard = static_cast<int>(rng.between(1, 3));
  return x;
}

// Membership computed set-wise from the raw triple list, independently of
// Matcher: each family is evaluated as joins over the triples.
inline std::set<Uri> oracleMembers(const std::vector<Triple>& input, const ConstructorExpr& x,
                                   const Uri& type = rdfType()) {
  std::set<Triple> triples(input.begin(), input.end());
  std::set<Uri> individuals;
  for (const auto& t : triples) {
    individuals.insert(t.subject);
    if (t.relation != type) individuals.insert(t.object);
  }
  auto typedT = [&](const Uri& y) { return triples.contains({y, type, *x.qualifier}); };
  std::set<Uri> out;
  std::map<Uri, std::set<Uri>> counted;
  switch (x.family) {
    case Family::Tc01:
      for (const auto& t : triples) if (t.relation == *x.relation) out.insert(t.subject);
      break;
    case Family::Tc02:
      for (const auto& t : triples) if (t.relation == *x.relation) out.insert(t.object);
      break;
    case Family::Tc03:
      for (const auto& t : triples) {
        if (t.relation == *x.relation) {
          out.insert(t.subject);
          out.insert(t.object);
        }
      }
      break;
    case Family::Tc04:
      for (const auto& t : triples) {
        if (t.object == *x.focus) out.insert(t.subject);
        if (t.subject == *x.focus) out.insert(t.object);
      }
      break;
    case Family::Tc05: {
      std::set<Uri> toFocus, fromFocus;
      for (const auto& t : triples) {
        if (t.object == *x.focus) toFocus.insert(t.subject);
        if (t.subject == *x.focus) fromFocus.insert(t.object);
      }
      for (const auto& t : triples) {
        if (toFocus.contains(t.object)) out.insert(t.subject);
        if (fromFocus.contains(t.subject)) out.insert(t.object);
      }
      break;
    }
    case Family::Tc06:
      for (const auto& t : triples) {
        if (t.relation == *x.relation && t.object == *x.focus) out.insert(t.subject);
      }
      break;
    case Family::Tc07:
    case Family::Tc11:
      for (const auto& t : triples) {
        if (t.relation == *x.relation && typedT(t.object)) counted[t.subject].insert(t.object);
      }
      break;
    case Family::Tc08:
    case Family::Tc12:
      for (const auto& t : triples) {
        if (t.relation == *x.relation && typedT(t.subject)) counted[t.object].insert(t.subject);
      }
      break;
    case Family::Tc09:
      for (const auto& t : triples) if (t.relation == *x.relation) counted[t.subject].insert(t.object);
      break;
    case Family::Tc10:
      for (const auto& t : triples) if (t.relation == *x.relation) counted[t.object].insert(t.subject);
      break;
  }
  const std::size_t need = x.minCard ? static_cast<std::size_t>(*x.minCard) : 1;
  for (const auto& [node, ys] : counted) {
    if (ys.size() >= need) out.insert(node);
  }
  std::set<Uri> kept;
  for (const auto& u : out) {
    if (individuals.contains(u)) kept.insert(u);
  }
  return kept;
}

inline std::vector<Uri> sortedVector(const std::set<Uri>& s) { return {s.begin(), s.end()}; }

}  // namespace dlcc::test
