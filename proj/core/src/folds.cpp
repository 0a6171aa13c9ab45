#include "gksvm/folds.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

#include "gksvm/rng.hpp"

namespace gksvm {

std::vector<int> FoldAssignment::indices_in_fold(int fold) const {
  std::vector<int> out;
  for (std::size_t i = 0; i < test_fold_of.size(); ++i) {
    if (test_fold_of[i] == fold) out.push_back(static_cast<int>(i));
  }
  return out;
}

void FoldAssignment::validate(const std::vector<int>& class_labels) const {
  if (k < 2) throw std::invalid_argument("folds: k must be >= 2");
  if (test_fold_of.size() != class_labels.size()) {
    throw std::invalid_argument("folds: assignment length mismatch");
  }
  if (static_cast<int>(validation_fold_of.size()) != k) {
    throw std::invalid_argument("folds: validation list length != k");
  }
  for (int f = 0; f < k; ++f) {
    const int v = validation_fold_of[f];
    if (v < 0 || v >= k || v == f) {
      throw std::invalid_argument("folds: bad validation fold");
    }
  }
  // Stratification: per fold, per class, within one of the proportional count.
  std::map<int, int> class_total;
  for (int y : class_labels) class_total[y]++;
  for (const auto& [cls, total] : class_total) {
    std::vector<int> per_fold(k, 0);
    for (std::size_t i = 0; i < class_labels.size(); ++i) {
      if (class_labels[i] == cls) per_fold[test_fold_of[i]]++;
    }
    for (int f = 0; f < k; ++f) {
      const double proportional = static_cast<double>(total) / k;
      if (std::abs(per_fold[f] - proportional) > 1.0) {
        throw std::invalid_argument("folds: stratification violated");
      }
    }
  }
}

FoldAssignment stratified_folds(const std::vector<int>& class_labels, int k,
                                std::uint64_t seed) {
  if (k < 2) throw std::invalid_argument("stratified_folds: k must be >= 2");
  std::map<int, std::vector<int>> members;  // ordered by class value
  for (std::size_t i = 0; i < class_labels.size(); ++i) {
    members[class_labels[i]].push_back(static_cast<int>(i));
  }
  for (const auto& [cls, idx] : members) {
    if (static_cast<int>(idx.size()) < k) {
      throw std::invalid_argument(
          "stratified_folds: class " + std::to_string(cls) +
          " has fewer than k members");
    }
  }

  FoldAssignment fa;
  fa.k = k;
  fa.test_fold_of.assign(class_labels.size(), -1);

  Rng shuffle_rng(derive_seed(seed, 0x5f01d5));
  std::vector<int> fold_sizes(k, 0);
  for (auto& [cls, idx] : members) {
    shuffle_rng.shuffle(idx);

    // floor(n_c/k) everywhere; the n_c % k extras go to the folds that are
    // currently smallest (ties broken by fold index), keeping total fold
    // sizes within one of each other.
    const int n_c = static_cast<int>(idx.size());
    std::vector<int> take(k, n_c / k);
    std::vector<int> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return fold_sizes[a] < fold_sizes[b];
    });
    for (int e = 0; e < n_c % k; ++e) take[order[e]]++;

    std::size_t pos = 0;
    for (int f = 0; f < k; ++f) {
      for (int t = 0; t < take[f]; ++t) fa.test_fold_of[idx[pos++]] = f;
      fold_sizes[f] += take[f];
    }
  }

  Rng val_rng(derive_seed(seed, 0x7a11d));
  fa.validation_fold_of.resize(k);
  for (int f = 0; f < k; ++f) {
    const int pick = static_cast<int>(val_rng.below(k - 1));
    fa.validation_fold_of[f] = pick < f ? pick : pick + 1;
  }

  fa.validate(class_labels);
  return fa;
}

}  // namespace gksvm
