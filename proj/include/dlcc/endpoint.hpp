#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "dlcc/graph.hpp"

namespace dlcc {

inline constexpr const char* kDefaultEndpoint = "https://dbpedia.org/sparql";
inline constexpr const char* kEndpointEnvVar = "DLCC_SPARQL_ENDPOINT";

// One LIMIT/OFFSET page of a rendered (prefix-less) query.
struct PageRequest {
  std::string query;
  std::size_t limit = 0;
  std::size_t offset = 0;
};

// The full text sent over the wire for a page.
std::string pageText(const PageRequest& page);

// Returns the body of a SPARQL JSON results document. Throws TransportError
// for failures worth retrying and ProtocolError for anything else.
class Transport {
 public:
  virtual ~Transport() = default;
  virtual std::string execute(const PageRequest& page) = 0;
  virtual std::string describe() const = 0;
};

// GET <endpoint>?query=... with Accept: application/sparql-results+json.
// Safe to share between threads; each call opens its own connection.
class HttpTransport : public Transport {
 public:
  explicit HttpTransport(std::string url, std::chrono::seconds timeout = std::chrono::seconds(120));
  std::string execute(const PageRequest& page) override;
  std::string describe() const override { return url_; }

 private:
  std::string url_;
  std::string origin_;  // scheme://host[:port]
  std::string path_;
  std::chrono::seconds timeout_;
};

// Canned results for offline runs and tests. The file is a JSON array of
// {"query": <rendered query>, "bindings": [<uri>, ...]}; queries are matched
// after whitespace normalization and pages are sliced from the list.
// Unknown queries yield no rows.
class FixtureTransport : public Transport {
 public:
  explicit FixtureTransport(const std::filesystem::path& file);
  explicit FixtureTransport(std::map<std::string, std::vector<std::string>> rows,
                            std::string label = "fixture:<memory>");
  std::string execute(const PageRequest& page) override;
  std::string describe() const override { return label_; }

 private:
  std::map<std::string, std::vector<std::string>> rows_;  // keyed by normalized query
  std::string label_;
};

// "fixture:<path>" or an http(s) URL.
std::unique_ptr<Transport> makeTransport(const std::string& endpoint);

// Explicit value if non-empty, else the environment override, else DBpedia.
std::string resolveEndpoint(const std::string& explicitValue);

// Pulls the URIs bound to ?x (or the first projected variable) out of a
// SPARQL JSON results body, in order. Non-IRI bindings are skipped.
std::vector<std::string> parseSelectResults(const std::string& body);

struct FetchOptions {
  std::size_t pageSize = 10000;
  // Rows pulled before the client-side shuffle, as a multiple of the limit.
  double poolFactor = 2.0;
  int maxAttempts = 3;
  std::chrono::milliseconds backoff{1000};  // doubled after every failure
};

struct FetchResult {
  std::vector<Uri> uris;
  std::size_t pooled = 0;  // distinct URIs seen before truncation
  std::vector<std::string> warnings;
};

// Pages through the query until the pool is full or the results run out,
// de-duplicates, sorts, shuffles with `seed` and keeps the first `limit`.
// A shorter list than requested is returned with a warning.
FetchResult fetchExamples(Transport& transport, const std::string& query, std::size_t limit,
                          std::uint64_t seed, const FetchOptions& options = {});

}  // namespace dlcc
