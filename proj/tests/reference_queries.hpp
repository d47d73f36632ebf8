#pragma once

#include <string_view>

namespace dlcc::test {

// Published people-domain queries, whitespace-normalized. The tc03 negative
// is listed as published (COUNT); the catalog deliberately uses DISTINCT.
struct ReferenceQuery {
  std::string_view testCase;
  std::string_view polarity;
  std::string_view text;
};

inline constexpr ReferenceQuery kReferenceQueries[] = {
    {"tc01", "positive", "SELECT DISTINCT(?x) WHERE { ?x a dbo:Person . ?x dbo:child ?y . }"},
    {"tc01", "negative",
     "SELECT DISTINCT(?x) WHERE { ?x a dbo:Person . FILTER(NOT EXISTS { ?x dbo:child ?z})}"},
    {"tc01", "hard_negative",
     "SELECT DISTINCT(?x) WHERE { ?x a dbo:Person . ?y dbo:child ?x. FILTER(NOT EXISTS { ?x "
     "dbo:child ?z})}"},
    {"tc03", "positive",
     "SELECT DISTINCT(?x) WHERE { { ?x a dbo:Person . ?x dbo:child ?y} UNION { ?x a dbo:Person . "
     "?y dbo:child ?x}}"},
    {"tc04", "positive",
     "SELECT DISTINCT(?x) WHERE { { ?x a dbo:Person . ?x ?y dbr:New_York_City} UNION { ?x a "
     "dbo:Person . dbr:New_York_City ?y ?x}}"},
    {"tc04", "negative",
     "SELECT DISTINCT(?x) WHERE { ?x a dbo:Person . FILTER(NOT EXISTS{ ?x ?y dbr:New_York_City} "
     "AND NOT EXISTS { dbr:New_York_City ?y ?x})}"},
    {"tc04", "hard_negative",
     "SELECT DISTINCT(?x) WHERE {{ ?x a dbo:Person . ?x ?y1 ?z . ?z ?y2 dbr:New_York_City } UNION "
     "{ ?x a dbo:Person . ?z ?y1 ?x . dbr:New_York_City ?y2 ?z } FILTER(NOT EXISTS {?x ?r "
     "dbr:New_York_City} AND NOT EXISTS {dbr:New_York_City ?s ?x})}"},
    {"tc06", "positive",
     "SELECT DISTINCT(?x) WHERE { ?x a dbo:Person . ?x dbo:birthPlace dbr:New_York_City }"},
    {"tc06", "negative",
     "SELECT DISTINCT(?x) WHERE { ?x a dbo:Person . FILTER(NOT EXISTS{ ?x dbo:birthPlace "
     "dbr:New_York_City })}"},
    {"tc06", "hard_negative",
     "SELECT DISTINCT(?x) ?r WHERE {{ ?x a dbo:Person . ?x dbo:birthPlace ?y . dbr:New_York_City "
     "?r ?x . FILTER(?y!=dbr:New_York_City)} UNION { ?x a dbo:Person . ?x dbo:birthPlace ?y . ?x "
     "?r dbr:New_York_City . FILTER(?y!=dbr:New_York_City)}}"},
    {"tc07", "positive",
     "SELECT DISTINCT(?x) WHERE { ?x a dbo:Person . ?x dbo:team ?y . ?y a dbo:BasketballTeam }"},
    {"tc07", "negative",
     "SELECT DISTINCT(?x) WHERE { ?x a dbo:Person . FILTER(NOT EXISTS{ ?x dbo:team ?y . ?y a "
     "dbo:BasketballTeam})}"},
    {"tc07", "hard_negative",
     "SELECT DISTINCT(?x) WHERE { ?x a dbo:Person . ?x dbo:team ?z1 . ?x ?r ?z2 . ?z2 a "
     "dbo:BaseballTeam FILTER(NOT EXISTS{ ?x dbo:team ?y . ?y a dbo:BasketballTeam })}"},
    {"tc09", "positive",
     "SELECT DISTINCT(?x) WHERE { ?x a dbo:Person . ?x dbo:award ?y1. ?x dbo:award ?y2. "
     "FILTER(?y1!=?y2)}"},
    {"tc09", "negative",
     "SELECT DISTINCT(?x) WHERE { ?x a dbo:Person . FILTER(NOT EXISTS{ ?x dbo:award ?y1. ?x "
     "dbo:award ?y2. FILTER(?y1!=?y2)})}"},
    {"tc09", "hard_negative",
     "SELECT DISTINCT(?x) WHERE { ?x a dbo:Person . ?x dbo:award ?y . FILTER(NOT EXISTS{ ?x "
     "dbo:award ?z. FILTER(?y!=?z)})}"},
    {"tc11", "positive",
     "SELECT DISTINCT(?x) WHERE { ?x a dbo:Person . ?x dbo:recordLabel ?y1 . ?y1 a "
     "dbo:RecordLabel . ?x dbo:recordLabel ?y2 . ?y2 a dbo:RecordLabel . FILTER(?y1!=?y2)}"},
    {"tc11", "negative",
     "SELECT DISTINCT(?x) WHERE { ?x a dbo:Person . FILTER(NOT EXISTS{ ?x dbo:recordLabel ?y1 . "
     "?y1 a dbo:RecordLabel . ?x dbo:recordLabel ?y2 . ?y2 a dbo:RecordLabel . "
     "FILTER(?y1!=?y2)})}"},
    {"tc11", "hard_negative",
     "SELECT DISTINCT(?x) WHERE { ?x a dbo:Person . ?x dbo:recordLabel ?y1 . ?y1 a "
     "dbo:RecordLabel . FILTER(NOT EXISTS{ ?x dbo:recordLabel ?y2 . ?y2 a dbo:RecordLabel . "
     "FILTER(?y1!=?y2)})}"},
};

}  // namespace dlcc::test
