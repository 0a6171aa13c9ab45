#include "gksvm/graph.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace gksvm {

void LabeledGraph::normalize() {
  std::set<std::pair<int, int>> unique;
  for (auto [a, b] : edges) {
    if (a == b) throw std::invalid_argument("graph: self-loop not allowed");
    if (a < 0 || b < 0 || a >= vertex_count || b >= vertex_count) {
      throw std::invalid_argument("graph: edge endpoint out of range");
    }
    unique.emplace(std::min(a, b), std::max(a, b));
  }
  edges.assign(unique.begin(), unique.end());
}

void LabeledGraph::validate(int alphabet_size) const {
  if (vertex_count <= 0) {
    throw std::invalid_argument("graph: vertex_count must be positive");
  }
  if (static_cast<int>(vertex_labels.size()) != vertex_count) {
    throw std::invalid_argument("graph: label list length != vertex_count");
  }
  std::pair<int, int> prev{-1, -1};
  for (auto e : edges) {
    if (e.first >= e.second) {
      throw std::invalid_argument("graph: edge not in (lo, hi) form");
    }
    if (e.first < 0 || e.second >= vertex_count) {
      throw std::invalid_argument("graph: edge endpoint out of range");
    }
    if (!(prev < e)) throw std::invalid_argument("graph: duplicate edge");
    prev = e;
  }
  if (alphabet_size >= 0) {
    for (int l : vertex_labels) {
      if (l < 0 || l >= alphabet_size) {
        throw std::invalid_argument("graph: vertex label out of alphabet");
      }
    }
  }
}

std::vector<std::vector<int>> LabeledGraph::adjacency() const {
  std::vector<std::vector<int>> adj(vertex_count);
  for (auto [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  return adj;
}

void DatasetBundle::validate() const {
  if (graphs.size() != class_labels.size()) {
    throw std::invalid_argument("bundle: graphs and class_labels differ in length");
  }
  if (alphabet_size <= 0) {
    throw std::invalid_argument("bundle: alphabet_size must be positive");
  }
  for (int y : class_labels) {
    if (y != 0 && y != 1) {
      throw std::invalid_argument("bundle: class labels must be 0 or 1");
    }
  }
  for (const auto& g : graphs) g.validate(alphabet_size);
}

Eigen::MatrixXd one_hot(const LabeledGraph& graph, int alphabet_size) {
  if (alphabet_size <= 0) {
    throw std::invalid_argument("one_hot: alphabet_size must be positive");
  }
  Eigen::MatrixXd out =
      Eigen::MatrixXd::Zero(graph.vertex_count, alphabet_size);
  for (int v = 0; v < graph.vertex_count; ++v) {
    const int l = graph.vertex_labels[v];
    if (l < 0 || l >= alphabet_size) {
      throw std::invalid_argument("one_hot: vertex label out of range");
    }
    out(v, l) = 1.0;
  }
  return out;
}

}  // namespace gksvm
