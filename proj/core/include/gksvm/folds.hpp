#pragma once

#include <cstdint>
#include <vector>

namespace gksvm {

/// A stratified k-fold split plus, for each outer (test) fold, the
/// validation fold chosen among the remaining k-1 folds.
struct FoldAssignment {
  int k = 0;
  std::vector<int> test_fold_of;        // per graph, in [0, k)
  std::vector<int> validation_fold_of;  // per outer fold, != that fold

  std::vector<int> indices_in_fold(int fold) const;
  void validate(const std::vector<int>& class_labels) const;
};

/// Stratified k-fold assignment, deterministic in `seed`.
///
/// Members of each class are shuffled and dealt to folds so every fold
/// receives floor(n_c/k) or ceil(n_c/k) members of class c; the folds that
/// receive the extra member are the currently smallest, which also keeps
/// total fold sizes within one of each other. One validation fold per outer
/// fold is then drawn uniformly from the other k-1 folds.
///
/// Throws std::invalid_argument if k < 2 or any class has fewer than k
/// members.
FoldAssignment stratified_folds(const std::vector<int>& class_labels, int k,
                                std::uint64_t seed);

}  // namespace gksvm
