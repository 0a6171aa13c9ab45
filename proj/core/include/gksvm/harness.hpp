#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "gksvm/folds.hpp"
#include "gksvm/trainer.hpp"
#include "gksvm/tu_io.hpp"

namespace gksvm::cv {

/// Hyper-parameter grid searched on the validation fold.
struct HyperGrid {
  std::vector<double> lambdas;
  std::vector<int> scale_counts;

  static HyperGrid defaults();  // {0, 0.5, ..., 3.0} x {1, 2}
  static HyperGrid fast();      // single point (0.5, 2) for bounded runs

  int size() const {
    return static_cast<int>(lambdas.size() * scale_counts.size());
  }
  std::pair<double, int> point(int index) const;
  void validate() const;
};

struct FoldRecord {
  int fold = 0;
  double lambda = 0.0;
  int s = 0;
  double test_accuracy = 0.0;

  bool operator==(const FoldRecord&) const = default;
};

struct CvReport {
  std::vector<FoldRecord> per_fold;
  double mean_accuracy = 0.0;
  double std_accuracy = 0.0;  // population standard deviation

  bool operator==(const CvReport&) const = default;
};

/// Fraction of exact matches; throws on empty or mismatched inputs.
double accuracy(const std::vector<int>& predictions,
                const std::vector<int>& truth);

/// One outer fold: grid search on the fold's validation set (ties broken by
/// smaller lambda, then smaller s), retrain on all non-test data with the
/// winner, and report test accuracy. Training seeds derive from
/// (seed, fold, grid index), so records are identical however folds are
/// scheduled.
FoldRecord run_fold(const DatasetBundle& bundle, const FoldAssignment& folds,
                    int fold_index, const HyperGrid& grid,
                    const trainer::TrainConfig& config, std::uint64_t seed);

/// Stratified k-fold cross-validation over the whole grid. `threads` > 1
/// runs folds concurrently; results do not depend on the thread count.
CvReport run_cv(const DatasetBundle& bundle, int k, const HyperGrid& grid,
                const trainer::TrainConfig& config, std::uint64_t seed,
                int threads = 1);

/// CSV: header `fold,lambda,s,test_accuracy`, one row per fold, then the
/// summary row `mean,<mean>,std,<std>`.
std::string report_csv(const CvReport& report);
CvReport parse_report_csv(const std::string& text);

}  // namespace gksvm::cv
