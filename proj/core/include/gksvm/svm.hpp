#pragma once

#include <Eigen/Core>
#include <vector>

#include "gksvm/kernel.hpp"

namespace gksvm::svm {

using kernel::GramMatrix;

/// Coefficients of the decision function in representer form, one per
/// training graph, plus the regularization strength.
struct SvmParams {
  Eigen::VectorXd alpha;
  double lambda = 0.0;
};

/// Targets in {-1, +1}; class 0 maps to -1, class 1 to +1.
struct SignedLabels {
  Eigen::VectorXd y;

  static SignedLabels from_class_labels(const std::vector<int>& class_labels);
  int size() const { return static_cast<int>(y.size()); }
};

/// K * alpha for an n_eval x n_train kernel matrix.
Eigen::VectorXd decision_values(const Eigen::MatrixXd& K,
                                const Eigen::VectorXd& alpha);

/// Positive decision value -> class 1, otherwise (including 0) class 0.
inline int predict(double decision_value) { return decision_value > 0.0; }

/// Soft-margin objective over the training Gram matrix:
/// sum_i max(0, 1 - y_i (K alpha)_i) + lambda * alpha^T K alpha.
double objective(const GramMatrix& K, const Eigen::VectorXd& alpha,
                 const SignedLabels& labels, double lambda);

}  // namespace gksvm::svm
