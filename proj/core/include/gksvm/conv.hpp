#pragma once

#include <Eigen/Core>
#include <vector>

#include "gksvm/graph.hpp"
#include "gksvm/rng.hpp"

namespace gksvm::conv {

/// Parameters of one message-passing layer. The weight multiplies the
/// concatenation of a vertex's own representation and its neighbor-sum
/// message, so its column count is exactly twice the input dimension.
struct ConvLayerParams {
  Eigen::MatrixXd weight;  // out_dim x 2*in_dim
  Eigen::VectorXd bias;    // out_dim

  int in_dim() const { return static_cast<int>(weight.cols()) / 2; }
  int out_dim() const { return static_cast<int>(weight.rows()); }
  void validate() const;
};

/// The convolution stack: layer 1 consumes one-hot label encodings
/// (input_dim = alphabet size), each later layer consumes its predecessor.
struct ConvStack {
  std::vector<ConvLayerParams> layers;

  int input_dim() const { return layers.front().in_dim(); }
  int output_dim() const { return layers.back().out_dim(); }
  void validate() const;
};

/// The set of vertex embeddings of one graph; row v is vertex v's vector.
/// All entries are >= 0 (ReLU output).
struct EmbeddingSet {
  Eigen::MatrixXd vectors;  // size x dim

  int size() const { return static_cast<int>(vectors.rows()); }
  int dim() const { return static_cast<int>(vectors.cols()); }
};

/// Gaussian entries with mean 0, stddev sqrt(2/cols); deterministic in rng.
Eigen::MatrixXd kaiming_init(int rows, int cols, Rng& rng);

/// Sum of the neighbor rows of H; the zero vector for an isolated vertex.
Eigen::VectorXd message(const LabeledGraph& graph, const Eigen::MatrixXd& H,
                        int v);

/// Row v of the result is ReLU(weight * concat(H_in[v], message(v)) + bias).
Eigen::MatrixXd layer_forward(const LabeledGraph& graph,
                              const Eigen::MatrixXd& H_in,
                              const ConvLayerParams& params);

/// One-hot encoding followed by every layer of the stack.
///
/// Evaluated through canonical vertex signatures, so relabeling the
/// graph's vertices permutes the output rows bitwise-exactly.
EmbeddingSet stack_forward(const LabeledGraph& graph, const ConvStack& stack,
                           int alphabet_size);

}  // namespace gksvm::conv
