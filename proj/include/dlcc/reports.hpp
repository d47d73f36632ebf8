#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "dlcc/evaluation.hpp"

namespace dlcc {

// The best classifier of one (embedding, test case, domain, size, hard)
// group. Ties go to the classifier earlier in kAllClassifiers.
struct BestResult {
  CellResult cell;
  std::size_t candidates = 0;  // successfully evaluated classifiers in the group
};

std::vector<BestResult> bestPerTestCase(const std::vector<CellResult>& results);

// Five-number summary plus mean, quartiles by linear interpolation.
struct Summary {
  std::size_t count = 0;
  double min = 0, q1 = 0, median = 0, q3 = 0, max = 0, mean = 0;
};
Summary summarize(std::vector<double> values);

// Columns:
//   accuracy_per_classifier.csv  embedding,test_case,domain,size,hard,classifier,
//                                accuracy,n_correct,n_test,p_value,significant,error
//   best_per_testcase.csv        embedding,test_case,domain,size,hard,classifier,
//                                accuracy,n_test,p_value,significant
//   domain_aggregate.csv         embedding,domain,size,count,min,q1,median,q3,max,mean
//                                (best accuracies of non-hard cells)
//   best_classifier_counts.csv   embedding,benchmark,classifier,count
//                                (benchmark is synthetic or dbpedia; all cells)
void writeAccuracyPerClassifier(const std::vector<CellResult>& results,
                                const std::filesystem::path& file);
std::vector<CellResult> readAccuracyPerClassifier(const std::filesystem::path& file);

// Writes all four files into outDir; returns their paths.
std::vector<std::filesystem::path> emitReports(const std::vector<CellResult>& results,
                                               const std::filesystem::path& outDir);

}  // namespace dlcc
