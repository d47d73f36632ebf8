#pragma once

#include <cstddef>

namespace dlcc {

inline constexpr double kDefaultAlpha = 0.05;
inline constexpr int kDefaultBonferroniM = 6;

struct Significance {
  double z = 0.0;       // 0 for the exact test
  double pValue = 1.0;
  bool significant = false;
};

// One-sided test of accuracy > 0.5 via the normal approximation, without
// continuity correction: z = (acc - 0.5) / sqrt(0.25 / nTest),
// p = 1 - Phi(z), significant iff p < alpha / m.
Significance significance(double accuracy, std::size_t nTest, double alpha = kDefaultAlpha,
                          int m = kDefaultBonferroniM);

// P(X >= correct) for X ~ Binomial(nTest, 0.5).
double exactBinomialPValue(std::size_t correct, std::size_t nTest);
Significance exactSignificance(std::size_t correct, std::size_t nTest,
                               double alpha = kDefaultAlpha, int m = kDefaultBonferroniM);

}  // namespace dlcc
