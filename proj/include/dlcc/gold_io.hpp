#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dlcc/graph.hpp"
#include "dlcc/split.hpp"

namespace dlcc {

// Minimal RFC 4180 CSV: fields containing ',', '"' or line breaks are quoted.
std::string csvField(std::string_view value);
std::vector<std::string> parseCsvLine(std::string_view line);

// One URI per line, sorted, trailing newline.
void writeUriList(const std::filesystem::path& file, std::vector<Uri> uris);
std::vector<Uri> readUriList(const std::filesystem::path& file);

// Header `uri,label`, then one row per example, label in {0,1}.
void writeSplitCsv(const std::filesystem::path& file, const std::vector<LabeledUri>& rows);
std::vector<LabeledUri> readSplitCsv(const std::filesystem::path& file);

void writeText(const std::filesystem::path& file, std::string_view text);
std::string readText(const std::filesystem::path& file);

// One evaluable unit on disk:
// <root>/<tcXX>/<domain>/<size>/{train,test}[_hard].csv
struct GoldCell {
  std::string testCase;  // "tc01"
  std::string domain;    // "synthetic", "people", ...
  int size = 0;
  bool hard = false;
  std::filesystem::path dir;

  std::filesystem::path trainFile() const { return dir / (hard ? "train_hard.csv" : "train.csv"); }
  std::filesystem::path testFile() const { return dir / (hard ? "test_hard.csv" : "test.csv"); }
};

// Cells in canonical order (test case, domain, size, non-hard before hard).
// Throws Error if root is not a directory or holds no cells.
std::vector<GoldCell> discoverCells(const std::filesystem::path& root);

}  // namespace dlcc
