#pragma once

#include <Eigen/Core>
#include <span>
#include <utility>
#include <vector>

#include "gksvm/graph.hpp"

namespace gksvm::conv {
struct ConvStack;
}

namespace gksvm::refine {

/// A vertex signature at round t: the vertex's own round-(t-1) id plus the
/// multiset of its neighbors' round-(t-1) ids.
struct Signature {
  int self = 0;
  std::vector<std::pair<int, int>> neighbors;  // (id, count), ascending id
};

/// Canonical signature tables over a fixed set of graphs.
///
/// Two vertices whose r-hop labeled neighborhoods agree receive the same
/// round-r signature and therefore bitwise-identical embeddings under any
/// convolution parameters, so the conv stack and the set kernel only ever
/// need one row per signature. Ids are assigned in lexicographic key order,
/// which makes them (and every summation order downstream) invariant under
/// vertex relabeling.
struct Atlas {
  int alphabet_size = 0;
  std::vector<std::vector<Signature>> rounds;  // rounds[t-1]: ids at round t
  std::vector<std::vector<int>> vertex_ids;    // per graph, per vertex: final id
  std::vector<std::vector<std::pair<int, double>>> graph_counts;
  // per graph: (final id, multiplicity), ascending id

  int round_count() const { return static_cast<int>(rounds.size()); }
  int ids_at(int round) const {
    return round == 0 ? alphabet_size
                      : static_cast<int>(rounds[round - 1].size());
  }
  int final_ids() const { return ids_at(round_count()); }
};

Atlas build_atlas(std::span<const LabeledGraph> graphs, int alphabet_size,
                  int rounds);

/// Per-round pre-activations and activations, one row per signature.
struct AtlasForward {
  std::vector<Eigen::MatrixXd> inputs;   // per round: ids x 2*in_dim (CONCAT)
  std::vector<Eigen::MatrixXd> preacts;  // per round: ids x out_dim
  std::vector<Eigen::MatrixXd> acts;     // ReLU(preacts)

  const Eigen::MatrixXd& embeddings() const { return acts.back(); }
};

AtlasForward atlas_forward(const Atlas& atlas, const conv::ConvStack& stack);

/// Reverse-mode pass: given dL/d(final activations), accumulates weight and
/// bias gradients for every layer. Shapes of d_weight/d_bias must match the
/// stack and arrive zero-initialized (or holding a partial sum).
void atlas_backward(const Atlas& atlas, const conv::ConvStack& stack,
                    const AtlasForward& fwd, const Eigen::MatrixXd& d_embed,
                    std::vector<Eigen::MatrixXd>& d_weight,
                    std::vector<Eigen::VectorXd>& d_bias);

}  // namespace gksvm::refine
