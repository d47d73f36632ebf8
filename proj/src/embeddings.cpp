#include "dlcc/embeddings.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

#include "dlcc/error.hpp"

namespace dlcc {

std::span<const double> EmbeddingSet::find(std::string_view key) const {
  auto it = index_.find(std::string(key));
  if (it == index_.end()) return {};
  return {data_.data() + it->second * dim_, dim_};
}

bool EmbeddingSet::set(const std::string& key, std::span<const double> values) {
  if (values.size() != dim_)
    throw FormatError(0, "vector for " + key + " has " + std::to_string(values.size()) +
                             " components, expected " + std::to_string(dim_));
  for (double v : values) {
    if (!std::isfinite(v)) throw FormatError(0, "non-finite component in vector for " + key);
  }
  auto [it, inserted] = index_.emplace(key, index_.size());
  if (inserted)
    data_.insert(data_.end(), values.begin(), values.end());
  else
    std::copy(values.begin(), values.end(), data_.begin() + static_cast<std::ptrdiff_t>(it->second * dim_));
  return !inserted;
}

namespace {

std::vector<std::string_view> splitWs(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

bool parseCount(std::string_view s, std::size_t& out) {
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && p == s.data() + s.size();
}

}  // namespace

EmbeddingSet loadEmbeddings(std::istream& in, std::vector<std::string>* warnings) {
  EmbeddingSet set;
  bool haveDim = false;
  std::size_t declaredCount = 0;
  bool haveHeader = false;
  std::string line;
  std::size_t lineNo = 0;
  std::vector<double> values;
  while (std::getline(in, line)) {
    ++lineNo;
    const auto tokens = splitWs(line);
    if (tokens.empty()) continue;
    if (!haveDim && !haveHeader && tokens.size() == 2) {
      std::size_t count = 0, dim = 0;
      if (parseCount(tokens[0], count) && parseCount(tokens[1], dim)) {
        if (dim == 0) throw FormatError(lineNo, "header declares dimension 0");
        set = EmbeddingSet(dim);
        haveDim = haveHeader = true;
        declaredCount = count;
        continue;
      }
    }
    if (tokens.size() < 2) throw FormatError(lineNo, "expected a URI followed by components");
    if (!haveDim) {
      set = EmbeddingSet(tokens.size() - 1);
      haveDim = true;
    }
    if (tokens.size() - 1 != set.dimension())
      throw FormatError(lineNo, "expected " + std::to_string(set.dimension()) + " components, found " +
                                    std::to_string(tokens.size() - 1));
    values.clear();
    for (std::size_t i = 1; i < tokens.size(); ++i) {
      const auto tok = tokens[i];
      double v = 0;
      auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (ec != std::errc() || p != tok.data() + tok.size())
        throw FormatError(lineNo, "non-numeric component '" + std::string(tok) + "'");
      if (!std::isfinite(v)) throw FormatError(lineNo, "non-finite component '" + std::string(tok) + "'");
      values.push_back(v);
    }
    const std::string key(tokens[0]);
    if (set.set(key, values) && warnings)
      warnings->push_back("line " + std::to_string(lineNo) + ": duplicate vector for " + key +
                          " replaces the earlier one");
  }
  if (haveHeader && declaredCount != set.size() && warnings)
    warnings->push_back("header declares " + std::to_string(declaredCount) + " vectors, found " +
                        std::to_string(set.size()));
  return set;
}

EmbeddingSet loadEmbeddings(const std::filesystem::path& file, std::vector<std::string>* warnings) {
  std::ifstream in(file);
  if (!in) throw Error("cannot read embeddings " + file.string());
  try {
    return loadEmbeddings(in, warnings);
  } catch (const FormatError& e) {
    throw FormatError(e.line(), file.string() + ": " +
                                    std::string(e.what()).substr(std::string(e.what()).find(": ") + 2));
  }
}

}  // namespace dlcc
