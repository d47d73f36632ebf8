#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dlcc/constructors.hpp"
#include "dlcc/graph.hpp"

namespace dlcc {

struct LabeledExamples {
  Family testCase = Family::Tc01;
  std::optional<ConstructorExpr> expr;  // absent for query-built sets
  std::vector<Uri> positives;           // sorted
  std::vector<Uri> negatives;           // sorted

  // Throws ValidationError if unbalanced or overlapping.
  void validate() const;
};

struct LabeledUri {
  Uri uri;
  int label;  // 1 positive, 0 negative

  friend bool operator==(const LabeledUri&, const LabeledUri&) = default;
};

struct SplitGoldStandard {
  std::vector<LabeledUri> train;  // sorted by uri
  std::vector<LabeledUri> test;   // sorted by uri
  double trainFraction = 0.8;
};

// Per class, round(trainFraction * n) examples go to train (half away from
// zero), the rest to test. Seeded shuffle within each class. Throws
// ValidationError on unbalanced input or a fraction outside [0, 1].
SplitGoldStandard splitStratified(const std::vector<Uri>& positives,
                                  const std::vector<Uri>& negatives, double trainFraction,
                                  std::uint64_t seed);
SplitGoldStandard splitStratified(const LabeledExamples& examples, double trainFraction,
                                  std::uint64_t seed);

}  // namespace dlcc
