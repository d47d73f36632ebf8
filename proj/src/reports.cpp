#include "dlcc/reports.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <map>
#include <sstream>
#include <tuple>

#include "dlcc/error.hpp"
#include "dlcc/gold_io.hpp"

namespace dlcc {

namespace fs = std::filesystem;

namespace {

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::string accuracyText(double v) { return fmt("%.6f", v); }
std::string pValueText(double v) { return fmt("%.6e", v); }

std::map<std::string, std::size_t> embeddingOrder(const std::vector<CellResult>& results) {
  std::map<std::string, std::size_t> order;
  for (const auto& r : results) order.emplace(r.embedding, order.size());
  return order;
}

std::size_t kindRank(ClassifierKind k) {
  return static_cast<std::size_t>(std::find(kAllClassifiers.begin(), kAllClassifiers.end(), k) -
                                  kAllClassifiers.begin());
}

auto groupKey(const std::map<std::string, std::size_t>& order, const CellResult& r) {
  return std::make_tuple(order.at(r.embedding), r.testCase, r.domain, r.size, r.hard);
}

std::vector<CellResult> canonicalOrder(std::vector<CellResult> results) {
  const auto order = embeddingOrder(results);
  std::stable_sort(results.begin(), results.end(), [&](const CellResult& a, const CellResult& b) {
    return std::tuple_cat(groupKey(order, a), std::make_tuple(kindRank(a.classifier))) <
           std::tuple_cat(groupKey(order, b), std::make_tuple(kindRank(b.classifier)));
  });
  return results;
}

double parseDouble(const std::string& s, std::size_t line) {
  double v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) throw ParseError(line, "not a number: '" + s + "'");
  return v;
}

long long parseInt(const std::string& s, std::size_t line) {
  long long v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) throw ParseError(line, "not an integer: '" + s + "'");
  return v;
}

const char* kPerClassifierHeader =
    "embedding,test_case,domain,size,hard,classifier,accuracy,n_correct,n_test,p_value,significant,error";

}  // namespace

std::vector<BestResult> bestPerTestCase(const std::vector<CellResult>& input) {
  const auto results = canonicalOrder(input);
  const auto order = embeddingOrder(results);
  std::vector<BestResult> out;
  for (std::size_t i = 0; i < results.size();) {
    std::size_t j = i;
    BestResult best;
    bool found = false;
    while (j < results.size() && groupKey(order, results[j]) == groupKey(order, results[i])) {
      const auto& r = results[j];
      if (r.ok()) {
        ++best.candidates;
        // Strictly greater: earlier kinds win ties.
        if (!found || r.accuracy > best.cell.accuracy) {
          best.cell = r;
          found = true;
        }
      }
      ++j;
    }
    if (found) out.push_back(std::move(best));
    i = j;
  }
  return out;
}

Summary summarize(std::vector<double> values) {
  Summary s;
  s.count = values.size();
  if (values.empty()) return s;
  std::sort(values.begin(), values.end());
  auto quantile = [&](double q) {
    const double pos = q * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    return values[lo] + (values[hi] - values[lo]) * (pos - static_cast<double>(lo));
  };
  s.min = values.front();
  s.max = values.back();
  s.q1 = quantile(0.25);
  s.median = quantile(0.5);
  s.q3 = quantile(0.75);
  double sum = 0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(values.size());
  return s;
}

void writeAccuracyPerClassifier(const std::vector<CellResult>& results, const fs::path& file) {
  std::string text = std::string(kPerClassifierHeader) + "\n";
  for (const auto& r : canonicalOrder(results)) {
    text += csvField(r.embedding) + "," + r.testCase + "," + csvField(r.domain) + "," +
            std::to_string(r.size) + "," + (r.hard ? "1" : "0") + "," + classifierName(r.classifier) +
            ",";
    if (r.ok()) {
      text += accuracyText(r.accuracy) + "," + std::to_string(r.nCorrect) + "," +
              std::to_string(r.nTest) + "," + pValueText(r.pValue) + "," + (r.significant ? "1" : "0") +
              ",";
    } else {
      text += ",,,,," + csvField(r.error);
    }
    text += "\n";
  }
  writeText(file, text);
}

std::vector<CellResult> readAccuracyPerClassifier(const fs::path& file) {
  std::istringstream in(readText(file));
  std::string line;
  std::size_t lineNo = 0;
  std::vector<CellResult> out;
  while (std::getline(in, line)) {
    ++lineNo;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (lineNo == 1) {
      if (line != kPerClassifierHeader) throw ParseError(1, file.string() + ": unexpected header");
      continue;
    }
    const auto f = parseCsvLine(line);
    if (f.size() != 12) throw ParseError(lineNo, file.string() + ": expected 12 columns");
    CellResult r;
    r.embedding = f[0];
    r.testCase = f[1];
    r.domain = f[2];
    r.size = static_cast<int>(parseInt(f[3], lineNo));
    r.hard = f[4] == "1";
    auto kind = parseClassifierKind(f[5]);
    if (!kind) throw ParseError(lineNo, "unknown classifier '" + f[5] + "'");
    r.classifier = *kind;
    r.error = f[11];
    if (r.ok()) {
      r.accuracy = parseDouble(f[6], lineNo);
      r.nCorrect = static_cast<std::size_t>(parseInt(f[7], lineNo));
      r.nTest = static_cast<std::size_t>(parseInt(f[8], lineNo));
      r.pValue = parseDouble(f[9], lineNo);
      r.significant = f[10] == "1";
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<fs::path> emitReports(const std::vector<CellResult>& results, const fs::path& outDir) {
  if (results.empty()) throw ValidationError("no results to report");
  fs::create_directories(outDir);
  std::vector<fs::path> written;

  const fs::path perClassifier = outDir / "accuracy_per_classifier.csv";
  writeAccuracyPerClassifier(results, perClassifier);
  written.push_back(perClassifier);

  const auto best = bestPerTestCase(results);
  std::string text = "embedding,test_case,domain,size,hard,classifier,accuracy,n_test,p_value,significant\n";
  for (const auto& b : best) {
    const auto& r = b.cell;
    text += csvField(r.embedding) + "," + r.testCase + "," + csvField(r.domain) + "," +
            std::to_string(r.size) + "," + (r.hard ? "1" : "0") + "," + classifierName(r.classifier) +
            "," + accuracyText(r.accuracy) + "," + std::to_string(r.nTest) + "," + pValueText(r.pValue) +
            "," + (r.significant ? "1" : "0") + "\n";
  }
  written.push_back(outDir / "best_per_testcase.csv");
  writeText(written.back(), text);

  const auto order = embeddingOrder(canonicalOrder(results));
  std::map<std::tuple<std::size_t, std::string, int>, std::vector<double>> byDomain;
  for (const auto& b : best) {
    if (!b.cell.hard) byDomain[{order.at(b.cell.embedding), b.cell.domain, b.cell.size}].push_back(b.cell.accuracy);
  }
  std::vector<std::string> names(order.size());
  for (const auto& [name, idx] : order) names[idx] = name;
  text = "embedding,domain,size,count,min,q1,median,q3,max,mean\n";
  for (const auto& [key, values] : byDomain) {
    const auto s = summarize(values);
    text += csvField(names[std::get<0>(key)]) + "," + csvField(std::get<1>(key)) + "," +
            std::to_string(std::get<2>(key)) + "," + std::to_string(s.count) + "," + accuracyText(s.min) +
            "," + accuracyText(s.q1) + "," + accuracyText(s.median) + "," + accuracyText(s.q3) + "," +
            accuracyText(s.max) + "," + accuracyText(s.mean) + "\n";
  }
  written.push_back(outDir / "domain_aggregate.csv");
  writeText(written.back(), text);

  // embedding index -> benchmark -> per-kind counts
  std::map<std::size_t, std::map<std::string, std::array<std::size_t, 6>>> counts;
  for (const auto& b : best) {
    const std::string bench = b.cell.domain == "synthetic" ? "synthetic" : "dbpedia";
    auto& row = counts[order.at(b.cell.embedding)].try_emplace(bench).first->second;
    ++row[kindRank(b.cell.classifier)];
  }
  text = "embedding,benchmark,classifier,count\n";
  for (const auto& [idx, benches] : counts) {
    for (const char* bench : {"synthetic", "dbpedia"}) {
      auto it = benches.find(bench);
      if (it == benches.end()) continue;
      for (std::size_t k = 0; k < kAllClassifiers.size(); ++k) {
        text += csvField(names[idx]) + "," + bench + "," + classifierName(kAllClassifiers[k]) + "," +
                std::to_string(it->second[k]) + "\n";
      }
    }
  }
  written.push_back(outDir / "best_classifier_counts.csv");
  writeText(written.back(), text);
  return written;
}

}  // namespace dlcc
