#include "dlcc/significance.hpp"

#include <algorithm>
#include <cmath>

#include "dlcc/error.hpp"

namespace dlcc {

namespace {

void check(std::size_t nTest, double alpha, int m) {
  if (nTest == 0) throw ValidationError("significance needs nTest >= 1");
  if (m < 1) throw ValidationError("Bonferroni m must be >= 1");
  if (!(alpha > 0.0 && alpha < 1.0)) throw ValidationError("alpha must be in (0, 1)");
}

}  // namespace

Significance significance(double accuracy, std::size_t nTest, double alpha, int m) {
  check(nTest, alpha, m);
  Significance s;
  s.z = (accuracy - 0.5) / std::sqrt(0.25 / static_cast<double>(nTest));
  s.pValue = 0.5 * std::erfc(s.z / std::sqrt(2.0));
  s.significant = s.pValue < alpha / m;
  return s;
}

double exactBinomialPValue(std::size_t correct, std::size_t nTest) {
  if (correct > nTest) throw ValidationError("more correct predictions than test examples");
  if (correct == 0) return 1.0;
  // Sum the upper tail in log space, largest term first.
  const double n = static_cast<double>(nTest);
  const double logHalfN = n * std::log(0.5);
  auto logTerm = [&](std::size_t k) {
    const double kd = static_cast<double>(k);
    return std::lgamma(n + 1) - std::lgamma(kd + 1) - std::lgamma(n - kd + 1) + logHalfN;
  };
  const std::size_t mode = std::max(correct, nTest / 2);
  const double peak = logTerm(mode);
  double sum = 0.0;
  for (std::size_t k = correct; k <= nTest; ++k) sum += std::exp(logTerm(k) - peak);
  return std::min(1.0, std::exp(peak) * sum);
}

Significance exactSignificance(std::size_t correct, std::size_t nTest, double alpha, int m) {
  check(nTest, alpha, m);
  Significance s;
  s.pValue = exactBinomialPValue(correct, nTest);
  s.significant = s.pValue < alpha / m;
  return s;
}

}  // namespace dlcc
