#include "dlcc/endpoint.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <regex>
#include <set>
#include <thread>

#include "httplib.h"
#include "json.hpp"

#include "dlcc/error.hpp"
#include "dlcc/gold_io.hpp"
#include "dlcc/rng.hpp"
#include "dlcc/sparql.hpp"

namespace dlcc {

using nlohmann::json;

std::string pageText(const PageRequest& page) {
  return withPrefixes(page.query) + "\nLIMIT " + std::to_string(page.limit) + " OFFSET " +
         std::to_string(page.offset);
}

HttpTransport::HttpTransport(std::string url, std::chrono::seconds timeout)
    : url_(std::move(url)), timeout_(timeout) {
  static const std::regex pattern(R"(^(https?://[^/?#]+)([^?#]*)$)");
  std::smatch m;
  if (!std::regex_match(url_, m, pattern)) throw ValidationError("not an http(s) endpoint: " + url_);
  origin_ = m[1];
  path_ = m[2].length() ? std::string(m[2]) : "/";
}

std::string HttpTransport::execute(const PageRequest& page) {
  httplib::Client client(origin_);
  client.set_connection_timeout(timeout_);
  client.set_read_timeout(timeout_);
  client.set_follow_location(true);
  const httplib::Params params{{"query", pageText(page)}};
  const httplib::Headers headers{{"Accept", "application/sparql-results+json"}};
  auto res = client.Get(path_, params, headers);
  if (!res) throw TransportError(url_ + ": " + httplib::to_string(res.error()));
  if (res->status == 429 || res->status >= 500)
    throw TransportError(url_ + ": HTTP " + std::to_string(res->status));
  if (res->status != 200)
    throw ProtocolError(url_ + ": HTTP " + std::to_string(res->status) + ": " +
                        res->body.substr(0, 200));
  return res->body;
}

FixtureTransport::FixtureTransport(const std::filesystem::path& file)
    : label_("fixture:" + file.string()) {
  json j;
  try {
    j = json::parse(readText(file));
  } catch (const json::exception& e) {
    throw ValidationError(file.string() + ": " + e.what());
  }
  if (!j.is_array()) throw ValidationError(file.string() + ": expected a JSON array");
  for (const auto& entry : j) {
    auto& rows = rows_[normalizeWhitespace(entry.at("query").get<std::string>())];
    for (const auto& b : entry.at("bindings")) rows.push_back(b.get<std::string>());
  }
}

FixtureTransport::FixtureTransport(std::map<std::string, std::vector<std::string>> rows,
                                   std::string label)
    : label_(std::move(label)) {
  for (auto& [q, r] : rows) rows_[normalizeWhitespace(q)] = std::move(r);
}

std::string FixtureTransport::execute(const PageRequest& page) {
  json bindings = json::array();
  auto it = rows_.find(normalizeWhitespace(page.query));
  if (it != rows_.end()) {
    const auto& rows = it->second;
    const std::size_t end = std::min(rows.size(), page.offset + page.limit);
    for (std::size_t i = page.offset; i < end; ++i)
      bindings.push_back({{"x", {{"type", "uri"}, {"value", rows[i]}}}});
  }
  json doc = {{"head", {{"vars", {"x"}}}}, {"results", {{"bindings", bindings}}}};
  return doc.dump();
}

std::unique_ptr<Transport> makeTransport(const std::string& endpoint) {
  if (endpoint.rfind("fixture:", 0) == 0)
    return std::make_unique<FixtureTransport>(std::filesystem::path(endpoint.substr(8)));
  if (endpoint.rfind("http://", 0) == 0 || endpoint.rfind("https://", 0) == 0)
    return std::make_unique<HttpTransport>(endpoint);
  throw ValidationError("endpoint must be an http(s) URL or fixture:<file>: " + endpoint);
}

std::string resolveEndpoint(const std::string& explicitValue) {
  if (!explicitValue.empty()) return explicitValue;
  if (const char* env = std::getenv(kEndpointEnvVar); env && *env) return env;
  return kDefaultEndpoint;
}

std::vector<std::string> parseSelectResults(const std::string& body) {
  json j;
  try {
    j = json::parse(body);
  } catch (const json::exception& e) {
    throw ProtocolError(std::string("malformed SPARQL JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("results") || !j["results"].contains("bindings") ||
      !j["results"]["bindings"].is_array())
    throw ProtocolError("SPARQL JSON lacks results.bindings");
  std::string var = "x";
  if (j.contains("head") && j["head"].contains("vars") && j["head"]["vars"].is_array()) {
    const auto& vars = j["head"]["vars"];
    if (!vars.empty() && std::find(vars.begin(), vars.end(), "x") == vars.end())
      var = vars.front().get<std::string>();
  }
  std::vector<std::string> out;
  for (const auto& row : j["results"]["bindings"]) {
    if (!row.is_object() || !row.contains(var)) continue;
    const auto& cell = row[var];
    if (cell.value("type", "") == "uri" && cell.contains("value") && cell["value"].is_string())
      out.push_back(cell["value"].get<std::string>());
  }
  return out;
}

namespace {

std::string executeWithRetry(Transport& transport, const PageRequest& page,
                             const FetchOptions& options) {
  const int attempts = std::max(1, options.maxAttempts);
  for (int attempt = 1;; ++attempt) {
    try {
      return transport.execute(page);
    } catch (const TransportError& e) {
      if (attempt >= attempts)
        throw TransportError(std::string(e.what()) + " (after " + std::to_string(attempt) +
                             " attempts)");
      std::this_thread::sleep_for(options.backoff * (1 << (attempt - 1)));
    }
  }
}

}  // namespace

FetchResult fetchExamples(Transport& transport, const std::string& query, std::size_t limit,
                          std::uint64_t seed, const FetchOptions& options) {
  FetchResult result;
  if (limit == 0) return result;
  const auto target = std::max<std::size_t>(
      limit, static_cast<std::size_t>(std::ceil(static_cast<double>(limit) * options.poolFactor)));
  const std::size_t pageSize = std::max<std::size_t>(1, options.pageSize);

  std::set<std::string> seen;
  std::size_t offset = 0;
  std::size_t skipped = 0;
  while (seen.size() < target) {
    PageRequest page{query, std::min(pageSize, target - seen.size()), offset};
    const auto rows = parseSelectResults(executeWithRetry(transport, page, options));
    for (const auto& r : rows) {
      if (Uri::isValid(r))
        seen.insert(r);
      else
        ++skipped;
    }
    offset += rows.size();
    if (rows.size() < page.limit) break;
  }
  if (skipped > 0)
    result.warnings.push_back("skipped " + std::to_string(skipped) + " bindings that are not valid IRIs");

  std::vector<Uri> pool;
  pool.reserve(seen.size());
  for (const auto& s : seen) pool.emplace_back(s);  // std::set keeps them sorted
  result.pooled = pool.size();
  Rng rng(seed);
  rng.shuffle(pool);
  if (pool.size() > limit) pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(limit), pool.end());
  if (pool.size() < limit)
    result.warnings.push_back("short list: " + std::to_string(pool.size()) + " of " +
                              std::to_string(limit) + " requested results");
  result.uris = std::move(pool);
  return result;
}

}  // namespace dlcc
