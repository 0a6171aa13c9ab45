#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "gksvm/conv.hpp"
#include "gksvm/kernel.hpp"
#include "gksvm/refine.hpp"
#include "gksvm/svm.hpp"

namespace gksvm::trainer {

struct TrainConfig {
  int epochs = 300;
  double learning_rate = 0.001;
  double lambda = 0.0;
  int scale_count = 1;
  int hidden_dim = 25;
  std::uint64_t seed = 0;
  int conv_layers = 2;

  void validate() const;
};

/// Everything the joint optimization touches: convolution weights/biases,
/// kernel scales and mixture weights, and the SVM coefficients.
struct ModelParams {
  conv::ConvStack stack;
  kernel::ScaleParams scales;
  svm::SvmParams svm;
};

/// Gradients shaped exactly like ModelParams.
struct ParamGrads {
  std::vector<Eigen::MatrixXd> weight;
  std::vector<Eigen::VectorXd> bias;
  Eigen::VectorXd sigmas;
  Eigen::VectorXd betas;
  Eigen::VectorXd alpha;
};

/// Kaiming weights, zero biases, sigma_l = 2^-(l-1), beta_l = 1, alpha = 0.
ModelParams init_params(const TrainConfig& config, int alphabet_size,
                        int train_size);

/// Batched forward/backward over a fixed training set.
///
/// Vertices are compressed to canonical neighborhood signatures first (see
/// refine.hpp): the convolution runs once per signature and the set kernel
/// sums Gaussian values over signature pairs weighted by multiplicities,
/// which is the per-vertex double sum up to floating-point reassociation.
/// Everything runs on one thread in a fixed order, so results are bitwise
/// reproducible.
class Pipeline {
 public:
  Pipeline(std::span<const LabeledGraph> graphs,
           const std::vector<int>& class_labels, int alphabet_size,
           int conv_layers = 2);

  /// Runs the full forward pass and returns the objective value.
  /// Keeps every artifact the backward pass needs.
  double forward(const ModelParams& params);

  /// Exact reverse-mode gradients of the objective at the point of the last
  /// forward() call, for the same params.
  ParamGrads backward(const ModelParams& params);

  int size() const { return n_; }
  const Eigen::MatrixXd& gram() const { return gram_; }
  const Eigen::VectorXd& decision_values() const { return decision_; }
  double objective() const { return objective_; }
  double train_accuracy() const;

  /// Per-vertex embedding sets at the last forward point.
  std::vector<conv::EmbeddingSet> embedding_sets() const;

 private:
  int n_ = 0;
  int alphabet_size_ = 0;
  std::vector<int> class_labels_;
  svm::SignedLabels labels_;
  refine::Atlas atlas_;

  // artifacts of the last forward()
  refine::AtlasForward conv_fwd_;
  Eigen::MatrixXd sq_dist_;               // signatures x signatures
  std::vector<Eigen::MatrixXd> scale_g_;  // per scale: exp(-d^2 / 2 sigma^2)
  Eigen::MatrixXd combined_;              // scratch: scale combinations
  Eigen::MatrixXd t1_;                    // scratch: combined * counts^T
  Eigen::MatrixXd gram_;                  // n x n, exactly symmetric
  Eigen::VectorXd decision_;              // K alpha
  Eigen::VectorXd margins_;               // y .* (K alpha)
  double objective_ = 0.0;
  bool have_forward_ = false;
};

struct ForwardResult {
  std::vector<conv::EmbeddingSet> sets;
  kernel::GramMatrix gram;
  double objective;
};

/// One-shot forward over a graph list: embeddings, Gram matrix, objective.
ForwardResult full_forward(const ModelParams& params,
                           std::span<const LabeledGraph> graphs,
                           const std::vector<int>& class_labels,
                           int alphabet_size);

/// Adam accumulators, shaped like the parameters they update.
struct AdamState {
  double learning_rate = 0.001;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  long step_count = 0;

  std::vector<Eigen::MatrixXd> m_weight, v_weight;
  std::vector<Eigen::VectorXd> m_bias, v_bias;
  Eigen::VectorXd m_sigmas, v_sigmas;
  Eigen::VectorXd m_betas, v_betas;
  Eigen::VectorXd m_alpha, v_alpha;

  static AdamState init(const ModelParams& params, double learning_rate);
};

/// Standard Adam update with bias correction on every parameter group.
void adam_step(AdamState& state, ModelParams& params, const ParamGrads& grads);

/// Projection onto the feasible region: beta = max(beta, 0),
/// sigma = max(sigma, sigma_min). All other parameters pass through.
void project(ModelParams& params);

struct EpochStats {
  int epoch;               // 1-based
  double objective;        // value of the forward pass of this epoch
  double train_accuracy;   // sign agreement of that same forward pass
};

/// Called after each epoch's update + projection with the new parameters.
using EpochObserver =
    std::function<void(const EpochStats&, const ModelParams&)>;

/// Full-batch training loop: epochs x (forward, backward, Adam, project).
/// Deterministic given (config, graphs, labels).
ModelParams train(const TrainConfig& config,
                  std::span<const LabeledGraph> graphs,
                  const std::vector<int>& class_labels, int alphabet_size,
                  const EpochObserver& observer = {});

/// Embeds each test graph, evaluates its multi-scale kernel row against the
/// training embedding sets, and classifies by the sign of the decision value.
std::vector<int> predict_graphs(const ModelParams& params,
                                std::span<const conv::EmbeddingSet> train_sets,
                                std::span<const LabeledGraph> test_graphs);

}  // namespace gksvm::trainer
