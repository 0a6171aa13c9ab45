// Independent reference implementations used as test oracles. Everything
// here is written with plain scalar loops, deliberately sharing no code
// with the library paths it checks.

#pragma once

#include <cmath>
#include <vector>

#include "gksvm/conv.hpp"
#include "gksvm/graph.hpp"
#include "gksvm/kernel.hpp"
#include "gksvm/rng.hpp"
#include "gksvm/trainer.hpp"

namespace oracle {

using gksvm::LabeledGraph;
using gksvm::Rng;
using gksvm::conv::EmbeddingSet;

inline bool rel_close(double a, double b, double tol) {
  const double scale = std::max({1.0, std::abs(a), std::abs(b)});
  return std::abs(a - b) <= tol * scale;
}

inline double gaussian(const Eigen::VectorXd& u, const Eigen::VectorXd& v,
                       double sigma) {
  double d2 = 0.0;
  for (Eigen::Index c = 0; c < u.size(); ++c) {
    d2 += (u[c] - v[c]) * (u[c] - v[c]);
  }
  return std::exp(-d2 / (2.0 * sigma * sigma));
}

inline double set_kernel(const EmbeddingSet& X, const EmbeddingSet& Y,
                         double sigma) {
  double sum = 0.0;
  for (int i = 0; i < X.size(); ++i) {
    for (int j = 0; j < Y.size(); ++j) {
      sum += gaussian(X.vectors.row(i).transpose(),
                      Y.vectors.row(j).transpose(), sigma);
    }
  }
  return sum;
}

inline double multiscale_kernel(const EmbeddingSet& X, const EmbeddingSet& Y,
                                const gksvm::kernel::ScaleParams& scales) {
  double sum = 0.0;
  for (int l = 0; l < scales.count(); ++l) {
    sum += scales.betas[l] * set_kernel(X, Y, scales.sigmas[l]);
  }
  return sum;
}

inline Eigen::MatrixXd one_hot(const LabeledGraph& g, int alphabet_size) {
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(g.vertex_count, alphabet_size);
  for (int v = 0; v < g.vertex_count; ++v) H(v, g.vertex_labels[v]) = 1.0;
  return H;
}

inline Eigen::MatrixXd layer(const LabeledGraph& g, const Eigen::MatrixXd& H,
                             const gksvm::conv::ConvLayerParams& p) {
  const int d = static_cast<int>(H.cols());
  const int out_d = static_cast<int>(p.weight.rows());
  Eigen::MatrixXd out(g.vertex_count, out_d);
  for (int v = 0; v < g.vertex_count; ++v) {
    std::vector<double> x(2 * d, 0.0);
    for (int c = 0; c < d; ++c) x[c] = H(v, c);
    for (auto [a, b] : g.edges) {
      if (a == v) {
        for (int c = 0; c < d; ++c) x[d + c] += H(b, c);
      }
      if (b == v) {
        for (int c = 0; c < d; ++c) x[d + c] += H(a, c);
      }
    }
    for (int o = 0; o < out_d; ++o) {
      double z = p.bias[o];
      for (int c = 0; c < 2 * d; ++c) z += p.weight(o, c) * x[c];
      out(v, o) = z > 0.0 ? z : 0.0;
    }
  }
  return out;
}

inline EmbeddingSet stack_forward(const LabeledGraph& g,
                                  const gksvm::conv::ConvStack& stack,
                                  int alphabet_size) {
  Eigen::MatrixXd H = oracle::one_hot(g, alphabet_size);
  for (const auto& p : stack.layers) H = layer(g, H, p);
  return EmbeddingSet{H};
}

/// Straight-line recomputation of the training objective.
inline double objective(const std::vector<LabeledGraph>& graphs,
                        const std::vector<int>& class_labels,
                        const gksvm::trainer::ModelParams& params,
                        int alphabet_size) {
  const int n = static_cast<int>(graphs.size());
  std::vector<EmbeddingSet> sets;
  for (const auto& g : graphs) {
    sets.push_back(oracle::stack_forward(g, params.stack, alphabet_size));
  }
  std::vector<std::vector<double>> K(n, std::vector<double>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      K[i][j] = oracle::multiscale_kernel(sets[i], sets[j], params.scales);
    }
  }
  double obj = 0.0;
  for (int i = 0; i < n; ++i) {
    double u = 0.0;
    for (int j = 0; j < n; ++j) u += K[i][j] * params.svm.alpha[j];
    const double y = class_labels[i] == 1 ? 1.0 : -1.0;
    const double h = 1.0 - y * u;
    if (h > 0.0) obj += h;
  }
  double reg = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      reg += params.svm.alpha[i] * params.svm.alpha[j] * K[i][j];
    }
  }
  return obj + params.svm.lambda * reg;
}

inline LabeledGraph random_graph(Rng& rng, int max_vertices, double edge_prob,
                                 int alphabet_size) {
  LabeledGraph g;
  g.vertex_count = 1 + static_cast<int>(rng.below(max_vertices));
  for (int v = 0; v < g.vertex_count; ++v) {
    g.vertex_labels.push_back(static_cast<int>(rng.below(alphabet_size)));
  }
  for (int a = 0; a < g.vertex_count; ++a) {
    for (int b = a + 1; b < g.vertex_count; ++b) {
      if (rng.uniform01() < edge_prob) g.edges.emplace_back(a, b);
    }
  }
  return g;
}

inline EmbeddingSet random_set(Rng& rng, int max_points, int dim,
                               double spread = 1.0) {
  const int pts = 1 + static_cast<int>(rng.below(max_points));
  EmbeddingSet set;
  set.vectors.resize(pts, dim);
  for (int i = 0; i < pts; ++i) {
    for (int c = 0; c < dim; ++c) set.vectors(i, c) = spread * rng.normal();
  }
  return set;
}

}  // namespace oracle
