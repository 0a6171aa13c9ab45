#pragma once

#include <Eigen/Core>
#include <string>
#include <utility>
#include <vector>

namespace gksvm {

/// Undirected graph with discrete vertex labels. Edges are stored once per
/// unordered pair as (lo, hi) with lo < hi, sorted ascending; no self-loops.
struct LabeledGraph {
  int vertex_count = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<int> vertex_labels;

  /// Sorts and deduplicates the edge list into canonical form.
  /// Throws std::invalid_argument on self-loops or out-of-range endpoints.
  void normalize();

  /// Checks all type invariants; alphabet_size < 0 skips the label check.
  void validate(int alphabet_size = -1) const;

  /// Neighbor lists, ascending vertex index.
  std::vector<std::vector<int>> adjacency() const;
};

/// A parsed dataset: graphs, binary class labels, and the size of the
/// (dense, 0-based) vertex-label alphabet.
struct DatasetBundle {
  std::vector<LabeledGraph> graphs;
  std::vector<int> class_labels;  // values in {0, 1}
  int alphabet_size = 0;
  std::string name;

  int size() const { return static_cast<int>(graphs.size()); }
  void validate() const;

  bool operator==(const DatasetBundle&) const = default;
};

inline bool operator==(const LabeledGraph& a, const LabeledGraph& b) {
  return a.vertex_count == b.vertex_count && a.edges == b.edges &&
         a.vertex_labels == b.vertex_labels;
}

/// One-hot encoding of the vertex labels: row v has a single 1.0 in the
/// column of v's label. Throws if any label falls outside [0, alphabet_size).
Eigen::MatrixXd one_hot(const LabeledGraph& graph, int alphabet_size);

}  // namespace gksvm
