#include "gksvm/svm.hpp"

#include <stdexcept>

namespace gksvm::svm {

SignedLabels SignedLabels::from_class_labels(
    const std::vector<int>& class_labels) {
  SignedLabels out;
  out.y.resize(static_cast<Eigen::Index>(class_labels.size()));
  for (std::size_t i = 0; i < class_labels.size(); ++i) {
    if (class_labels[i] != 0 && class_labels[i] != 1) {
      throw std::invalid_argument("signed labels: class label not in {0,1}");
    }
    out.y[static_cast<Eigen::Index>(i)] = class_labels[i] == 1 ? 1.0 : -1.0;
  }
  return out;
}

Eigen::VectorXd decision_values(const Eigen::MatrixXd& K,
                                const Eigen::VectorXd& alpha) {
  if (K.cols() != alpha.size()) {
    throw std::invalid_argument("decision_values: K columns != alpha length");
  }
  return K * alpha;
}

double objective(const GramMatrix& K, const Eigen::VectorXd& alpha,
                 const SignedLabels& labels, double lambda) {
  const Eigen::Index n = K.values.rows();
  if (K.values.cols() != n || alpha.size() != n || labels.y.size() != n) {
    throw std::invalid_argument("objective: dimension mismatch");
  }
  if (!(lambda >= 0.0)) {
    throw std::invalid_argument("objective: lambda must be >= 0");
  }
  const Eigen::VectorXd u = K.values * alpha;
  double hinge = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    hinge += std::max(0.0, 1.0 - labels.y[i] * u[i]);
  }
  return hinge + lambda * alpha.dot(u);
}

}  // namespace gksvm::svm
