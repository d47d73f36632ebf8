#include <sstream>

#include "doctest.h"
#include "dlcc/error.hpp"
#include "dlcc/ntriples.hpp"
#include "support.hpp"

using namespace dlcc;
using dlcc::test::ex;

namespace {

KnowledgeGraph parse(const std::string& text) {
  std::istringstream in(text);
  return parseNTriples(in);
}

std::string write(const KnowledgeGraph& g) {
  std::ostringstream out;
  writeNTriples(g, out);
  return out.str();
}

}  // namespace

TEST_SUITE("ntriples") {

TEST_CASE("parses IRI triples, comments and blank lines") {
  const auto g = parse(
      "# header\n"
      "\n"
      "<http://ex.org/a> <http://ex.org/r> <http://ex.org/b> .\n"
      "  <http://ex.org/b>\t<http://ex.org/r>   <http://ex.org/c>.   # trailing\n");
  CHECK(g.size() == 2);
  CHECK(g.contains({ex("a"), ex("r"), ex("b")}));
  CHECK(g.contains({ex("b"), ex("r"), ex("c")}));
}

TEST_CASE("output is sorted and canonical") {
  KnowledgeGraph g;
  g.add({ex("b"), ex("r"), ex("a")});
  g.add({ex("a"), ex("r"), ex("b")});
  CHECK(write(g) ==
        "<http://ex.org/a> <http://ex.org/r> <http://ex.org/b> .\n"
        "<http://ex.org/b> <http://ex.org/r> <http://ex.org/a> .\n");
}

TEST_CASE("syntax errors carry the line number") {
  auto lineOf = [](const std::string& text) -> std::size_t {
    try {
      parse(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  CHECK(lineOf("<http://a/x> <http://a/r> <http://a/y>\n") == 1);
  CHECK(lineOf("<http://a/x> <http://a/r> <http://a/y> .\n<http://a/x> <http://a/r>\n") == 2);
  CHECK(lineOf("\n\n<http://a/x <http://a/r> <http://a/y> .\n") == 3);
  CHECK(lineOf("<not an iri> <http://a/r> <http://a/y> .\n") == 1);
  CHECK(lineOf("<http://a/x> <http://a/r> <http://a/y> . extra\n") == 1);
}

TEST_CASE("literals and blank nodes are unsupported") {
  CHECK_THROWS_AS(parse("<http://a/x> <http://a/r> \"lit\" .\n"), UnsupportedTermError);
  CHECK_THROWS_AS(parse("_:b0 <http://a/r> <http://a/y> .\n"), UnsupportedTermError);
  CHECK_THROWS_AS(parse("<http://a/x> <http://a/r> _:b1 .\n"), UnsupportedTermError);
}

TEST_CASE("IRI escapes round-trip") {
  KnowledgeGraph g;
  const Uri odd("http://ex.org/a{b}|c^d`e\\f");
  g.add({odd, ex("r"), ex("b")});
  const auto text = write(g);
  CHECK(text.find('{') == std::string::npos);
  const auto back = parse(text);
  CHECK(back.contains({odd, ex("r"), ex("b")}));
  CHECK(parse("<http://ex.org/\\u00e9> <http://ex.org/r> <http://ex.org/b> .\n")
            .contains({Uri("http://ex.org/\xc3\xa9"), ex("r"), ex("b")}));
}

TEST_CASE("property: round-trip preserves the triple set and bytes") {
  Rng rng(11);
  for (int round = 0; round < 200; ++round) {
    KnowledgeGraph g;
    const auto n = rng.index(300);
    for (std::size_t i = 0; i < n; ++i) {
      g.add({ex("e" + std::to_string(rng.index(50))), ex("r" + std::to_string(rng.index(5))),
             ex("e" + std::to_string(rng.index(50)))});
    }
    const auto text = write(g);
    const auto back = parse(text);
    REQUIRE(back.triples() == g.triples());
    CHECK(write(back) == text);
  }
}

}
