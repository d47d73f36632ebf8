#include "dlcc/split.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "dlcc/error.hpp"
#include "dlcc/rng.hpp"

namespace dlcc {

void LabeledExamples::validate() const {
  if (positives.size() != negatives.size()) {
    throw ValidationError(familyName(testCase) + ": unbalanced examples (" +
                          std::to_string(positives.size()) + " positives, " +
                          std::to_string(negatives.size()) + " negatives)");
  }
  std::unordered_set<std::string> pos;
  for (const auto& p : positives) pos.insert(p.str());
  for (const auto& n : negatives) {
    if (pos.contains(n.str()))
      throw ValidationError(familyName(testCase) + ": " + n.str() + " is both positive and negative");
  }
}

SplitGoldStandard splitStratified(const std::vector<Uri>& positives,
                                  const std::vector<Uri>& negatives, double trainFraction,
                                  std::uint64_t seed) {
  if (positives.size() != negatives.size())
    throw ValidationError("cannot split unbalanced examples");
  if (!(trainFraction >= 0.0 && trainFraction <= 1.0))
    throw ValidationError("train fraction must be in [0, 1]");

  Rng rng(seed);
  const auto perClass =
      static_cast<std::size_t>(std::llround(trainFraction * static_cast<double>(positives.size())));
  SplitGoldStandard out;
  out.trainFraction = trainFraction;
  auto place = [&](std::vector<Uri> items, int label) {
    std::sort(items.begin(), items.end());
    rng.shuffle(items);
    for (std::size_t i = 0; i < items.size(); ++i) {
      (i < perClass ? out.train : out.test).push_back({std::move(items[i]), label});
    }
  };
  place(positives, 1);
  place(negatives, 0);
  auto byUri = [](const LabeledUri& a, const LabeledUri& b) { return a.uri < b.uri; };
  std::sort(out.train.begin(), out.train.end(), byUri);
  std::sort(out.test.begin(), out.test.end(), byUri);
  return out;
}

SplitGoldStandard splitStratified(const LabeledExamples& examples, double trainFraction,
                                  std::uint64_t seed) {
  examples.validate();
  return splitStratified(examples.positives, examples.negatives, trainFraction, seed);
}

}  // namespace dlcc
