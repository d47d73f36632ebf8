#pragma once

#include <filesystem>
#include <istream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace dlcc {

// Vectors keyed by the URI string exactly as written in the file.
class EmbeddingSet {
 public:
  EmbeddingSet() = default;
  explicit EmbeddingSet(std::size_t dimension) : dim_(dimension) {}

  std::size_t dimension() const noexcept { return dim_; }
  std::size_t size() const noexcept { return index_.size(); }

  // Returns an empty span if the key is unknown.
  std::span<const double> find(std::string_view key) const;
  bool contains(std::string_view key) const { return index_.contains(std::string(key)); }

  // Inserts or replaces; returns true if the key was already present.
  // Throws FormatError(0, ...) on a dimension mismatch or non-finite value.
  bool set(const std::string& key, std::span<const double> values);

 private:
  std::size_t dim_ = 0;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<double> data_;
};

// Text format: `<uri> v1 ... vd` per line, whitespace separated, with an
// optional first line `<count> <dim>`. The dimension is fixed by the header
// or else by the first data line. Later duplicates replace earlier ones and
// add a warning. Ragged rows, non-numeric or non-finite components raise
// FormatError carrying the 1-based line number.
EmbeddingSet loadEmbeddings(std::istream& in, std::vector<std::string>* warnings = nullptr);
EmbeddingSet loadEmbeddings(const std::filesystem::path& file,
                            std::vector<std::string>* warnings = nullptr);

}  // namespace dlcc
