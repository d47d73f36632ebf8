#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "dlcc/graph.hpp"

namespace dlcc {

// Line-oriented N-Triples restricted to IRI terms. Output lines are sorted so
// that the same triple set always serializes to the same bytes.
void writeNTriples(const KnowledgeGraph& g, std::ostream& out);
void writeNTriples(const KnowledgeGraph& g, const std::filesystem::path& file);

// Throws ParseError (with 1-based line) on syntax errors and
// UnsupportedTermError on literals or blank nodes.
KnowledgeGraph parseNTriples(std::istream& in, Uri typeRelation = rdfType());
KnowledgeGraph parseNTriples(const std::filesystem::path& file,
                             Uri typeRelation = rdfType());

// `<...>` with N-Triples IRIREF escaping.
std::string formatIriRef(const Uri& u);

}  // namespace dlcc
