#include "dlcc/gold_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <tuple>

#include "dlcc/constructors.hpp"
#include "dlcc/error.hpp"

namespace dlcc {

namespace fs = std::filesystem;

std::string csvField(std::string_view value) {
  if (value.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(value);
  std::string out = "\"";
  for (char c : value) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::vector<std::string> parseCsvLine(std::string_view line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(std::move(cur));
  return fields;
}

void writeText(const fs::path& file, std::string_view text) {
  if (file.has_parent_path()) fs::create_directories(file.parent_path());
  std::ofstream out(file, std::ios::binary);
  if (!out) throw Error("cannot write " + file.string());
  out << text;
  if (!out) throw Error("write failed: " + file.string());
}

std::string readText(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error("cannot read " + file.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void writeUriList(const fs::path& file, std::vector<Uri> uris) {
  std::sort(uris.begin(), uris.end());
  std::string text;
  for (const auto& u : uris) {
    text += u.str();
    text += '\n';
  }
  writeText(file, text);
}

std::vector<Uri> readUriList(const fs::path& file) {
  std::istringstream in(readText(file));
  std::vector<Uri> out;
  std::string line;
  std::size_t lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto u = Uri::tryParse(line);
    if (!u) throw ParseError(lineNo, file.string() + ": invalid URI '" + line + "'");
    out.push_back(std::move(*u));
  }
  return out;
}

void writeSplitCsv(const fs::path& file, const std::vector<LabeledUri>& rows) {
  std::string text = "uri,label\n";
  for (const auto& row : rows) {
    text += csvField(row.uri.str());
    text += ',';
    text += std::to_string(row.label);
    text += '\n';
  }
  writeText(file, text);
}

std::vector<LabeledUri> readSplitCsv(const fs::path& file) {
  std::istringstream in(readText(file));
  std::vector<LabeledUri> out;
  std::string line;
  std::size_t lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = parseCsvLine(line);
    if (lineNo == 1 && fields.size() == 2 && fields[0] == "uri") continue;
    if (fields.size() != 2) throw ParseError(lineNo, file.string() + ": expected uri,label");
    auto u = Uri::tryParse(fields[0]);
    if (!u) throw ParseError(lineNo, file.string() + ": invalid URI '" + fields[0] + "'");
    if (fields[1] != "0" && fields[1] != "1")
      throw ParseError(lineNo, file.string() + ": label must be 0 or 1");
    out.push_back({std::move(*u), fields[1] == "1" ? 1 : 0});
  }
  return out;
}

std::vector<GoldCell> discoverCells(const fs::path& root) {
  if (!fs::is_directory(root)) throw Error("gold standard directory not found: " + root.string());
  std::vector<GoldCell> cells;
  for (const auto& tc : fs::directory_iterator(root)) {
    if (!tc.is_directory() || !parseFamily(tc.path().filename().string())) continue;
    for (const auto& domain : fs::directory_iterator(tc.path())) {
      if (!domain.is_directory()) continue;
      for (const auto& size : fs::directory_iterator(domain.path())) {
        if (!size.is_directory()) continue;
        const auto sizeName = size.path().filename().string();
        int n = 0;
        auto [ptr, ec] = std::from_chars(sizeName.data(), sizeName.data() + sizeName.size(), n);
        if (ec != std::errc() || ptr != sizeName.data() + sizeName.size()) continue;
        for (bool hard : {false, true}) {
          GoldCell cell{tc.path().filename().string(), domain.path().filename().string(), n, hard,
                        size.path()};
          if (fs::exists(cell.trainFile()) && fs::exists(cell.testFile()))
            cells.push_back(std::move(cell));
        }
      }
    }
  }
  if (cells.empty()) throw Error("no gold standard cells below " + root.string());
  std::sort(cells.begin(), cells.end(), [](const GoldCell& a, const GoldCell& b) {
    return std::tie(a.testCase, a.domain, a.size, a.hard) <
           std::tie(b.testCase, b.domain, b.size, b.hard);
  });
  return cells;
}

}  // namespace dlcc
