#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <vector>

#include "gksvm/graph.hpp"

namespace gksvm::tu {

/// Parses a TU-Dortmund-format dataset from `<dir>/<name>_A.txt`,
/// `_graph_indicator.txt`, `_graph_labels.txt`, `_node_labels.txt`.
///
/// File indices are 1-based; both edge directions are listed and collapse to
/// one undirected pair. Graph labels (exactly one or two distinct raw values)
/// map by ascending raw value to {0, 1}. Node labels are remapped to a dense
/// 0-based alphabet by ascending raw value. Self-loops are dropped; a note
/// per dropped loop is appended to *warnings when given. Continuous node
/// attribute files are ignored.
///
/// Throws std::runtime_error on missing files, non-integer tokens, edges
/// referencing unknown vertices or crossing graphs, or more than two
/// distinct graph-label values.
DatasetBundle parse_tu_dataset(const std::filesystem::path& dir,
                               const std::string& name,
                               std::vector<std::string>* warnings = nullptr);

/// Writes the bundle back out in TU format (both edge directions, 1-based
/// indices). parse_tu_dataset(write_tu_dataset(b)) == b.
void write_tu_dataset(const DatasetBundle& bundle,
                      const std::filesystem::path& dir);

struct DatasetStats {
  int n_graphs = 0;
  double mean_vertices = 0.0;
  double mean_edges = 0.0;  // undirected pairs
  std::array<int, 2> class_counts{0, 0};
};

/// Means over all graphs; throws std::invalid_argument on an empty bundle.
DatasetStats dataset_stats(const DatasetBundle& bundle);

/// CSV with header `dataset,n_graphs,mean_vertices,mean_edges,n_class0,n_class1`.
std::string stats_csv(const std::string& dataset_name, const DatasetStats& s);

}  // namespace gksvm::tu
