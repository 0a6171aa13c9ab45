#include "gksvm/conv.hpp"

#include <cmath>
#include <stdexcept>

#include "gksvm/refine.hpp"

namespace gksvm::conv {

void ConvLayerParams::validate() const {
  if (weight.rows() < 1 || weight.cols() < 2 || weight.cols() % 2 != 0) {
    throw std::invalid_argument(
        "conv layer: weight must be out_dim x 2*in_dim");
  }
  if (bias.size() != weight.rows()) {
    throw std::invalid_argument("conv layer: bias length != out_dim");
  }
}

void ConvStack::validate() const {
  if (layers.empty()) throw std::invalid_argument("conv stack: no layers");
  for (const auto& layer : layers) layer.validate();
  for (std::size_t t = 1; t < layers.size(); ++t) {
    if (layers[t].in_dim() != layers[t - 1].out_dim()) {
      throw std::invalid_argument("conv stack: layer dimension chain broken");
    }
  }
}

Eigen::MatrixXd kaiming_init(int rows, int cols, Rng& rng) {
  if (rows < 1 || cols < 1) {
    throw std::invalid_argument("kaiming_init: rows and cols must be >= 1");
  }
  const double stddev = std::sqrt(2.0 / static_cast<double>(cols));
  Eigen::MatrixXd out(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) out(i, j) = stddev * rng.normal();
  }
  return out;
}

Eigen::VectorXd message(const LabeledGraph& graph, const Eigen::MatrixXd& H,
                        int v) {
  if (H.rows() != graph.vertex_count) {
    throw std::invalid_argument("message: H row count != vertex_count");
  }
  if (v < 0 || v >= graph.vertex_count) {
    throw std::invalid_argument("message: vertex index out of range");
  }
  Eigen::VectorXd m = Eigen::VectorXd::Zero(H.cols());
  for (auto [a, b] : graph.edges) {
    if (a == v) m += H.row(b);
    if (b == v) m += H.row(a);
  }
  return m;
}

Eigen::MatrixXd layer_forward(const LabeledGraph& graph,
                              const Eigen::MatrixXd& H_in,
                              const ConvLayerParams& params) {
  params.validate();
  if (H_in.cols() != params.in_dim()) {
    throw std::invalid_argument("layer_forward: H_in column count mismatch");
  }
  if (H_in.rows() != graph.vertex_count) {
    throw std::invalid_argument("layer_forward: H_in row count mismatch");
  }
  const int d = params.in_dim();
  const auto adj = graph.adjacency();
  Eigen::MatrixXd out(graph.vertex_count, params.out_dim());
  Eigen::VectorXd x(2 * d);
  for (int v = 0; v < graph.vertex_count; ++v) {
    x.head(d) = H_in.row(v);
    x.tail(d).setZero();
    for (int w : adj[v]) x.tail(d) += H_in.row(w);
    out.row(v) =
        ((params.weight * x + params.bias).cwiseMax(0.0)).transpose();
  }
  return out;
}

EmbeddingSet stack_forward(const LabeledGraph& graph, const ConvStack& stack,
                           int alphabet_size) {
  stack.validate();
  if (stack.input_dim() != alphabet_size) {
    throw std::invalid_argument("stack_forward: input dim != alphabet size");
  }
  const refine::Atlas atlas = refine::build_atlas(
      std::span<const LabeledGraph>(&graph, 1), alphabet_size,
      static_cast<int>(stack.layers.size()));
  const refine::AtlasForward fwd = refine::atlas_forward(atlas, stack);

  EmbeddingSet set;
  set.vectors.resize(graph.vertex_count, stack.output_dim());
  for (int v = 0; v < graph.vertex_count; ++v) {
    set.vectors.row(v) = fwd.embeddings().row(atlas.vertex_ids[0][v]);
  }
  return set;
}

}  // namespace gksvm::conv
