#include "gksvm/trainer.hpp"

#include <cmath>
#include <stdexcept>

namespace gksvm::trainer {

void TrainConfig::validate() const {
  if (epochs < 1) throw std::invalid_argument("config: epochs must be >= 1");
  if (!(learning_rate > 0.0)) {
    throw std::invalid_argument("config: learning_rate must be > 0");
  }
  if (scale_count < 1) {
    throw std::invalid_argument("config: scale_count must be >= 1");
  }
  if (hidden_dim < 1) {
    throw std::invalid_argument("config: hidden_dim must be >= 1");
  }
  if (conv_layers < 1) {
    throw std::invalid_argument("config: conv_layers must be >= 1");
  }
  if (!(lambda >= 0.0)) {
    throw std::invalid_argument("config: lambda must be >= 0");
  }
}

ModelParams init_params(const TrainConfig& config, int alphabet_size,
                        int train_size) {
  config.validate();
  if (alphabet_size < 1 || train_size < 1) {
    throw std::invalid_argument("init_params: empty alphabet or training set");
  }

  ModelParams params;
  Rng rng(derive_seed(config.seed, 0x1a171));
  int in_dim = alphabet_size;
  for (int t = 0; t < config.conv_layers; ++t) {
    conv::ConvLayerParams layer;
    layer.weight = conv::kaiming_init(config.hidden_dim, 2 * in_dim, rng);
    layer.bias = Eigen::VectorXd::Zero(config.hidden_dim);
    params.stack.layers.push_back(std::move(layer));
    in_dim = config.hidden_dim;
  }

  // All-equal scales would receive identical gradients and never separate;
  // halving per scale keeps magnitudes near 1 while breaking the tie.
  params.scales.sigmas.resize(config.scale_count);
  params.scales.betas.resize(config.scale_count);
  for (int l = 0; l < config.scale_count; ++l) {
    params.scales.sigmas[l] = std::ldexp(1.0, -l);
    params.scales.betas[l] = 1.0;
  }

  params.svm.alpha = Eigen::VectorXd::Zero(train_size);
  params.svm.lambda = config.lambda;
  return params;
}

Pipeline::Pipeline(std::span<const LabeledGraph> graphs,
                   const std::vector<int>& class_labels, int alphabet_size,
                   int conv_layers)
    : n_(static_cast<int>(graphs.size())),
      alphabet_size_(alphabet_size),
      class_labels_(class_labels) {
  if (graphs.empty()) throw std::invalid_argument("pipeline: no graphs");
  if (class_labels.size() != graphs.size()) {
    throw std::invalid_argument("pipeline: label count mismatch");
  }
  labels_ = svm::SignedLabels::from_class_labels(class_labels);
  atlas_ = refine::build_atlas(graphs, alphabet_size, conv_layers);
}

double Pipeline::forward(const ModelParams& params) {
  params.stack.validate();
  params.scales.validate();
  if (params.svm.alpha.size() != n_) {
    throw std::invalid_argument("forward: alpha length != training size");
  }

  conv_fwd_ = refine::atlas_forward(atlas_, params.stack);
  const Eigen::MatrixXd& E = conv_fwd_.embeddings();
  const int r = static_cast<int>(E.rows());

  // Squared distances between signature embeddings, exactly symmetric.
  const Eigen::VectorXd sqn = E.rowwise().squaredNorm();
  Eigen::MatrixXd prod(r, r);
  prod.setZero();
  prod.selfadjointView<Eigen::Lower>().rankUpdate(E);
  sq_dist_.resize(r, r);
  for (int b = 0; b < r; ++b) {
    const int len = r - b;
    sq_dist_.col(b).tail(len) =
        (sqn.tail(len).array() + sqn[b] - 2.0 * prod.col(b).tail(len).array())
            .max(0.0);
    sq_dist_.row(b).tail(len) = sq_dist_.col(b).tail(len).transpose();
  }

  const int s = params.scales.count();
  scale_g_.resize(s);
  for (int l = 0; l < s; ++l) {
    const double sigma = params.scales.sigmas[l];
    scale_g_[l] =
        (sq_dist_.array() * (-0.5 / (sigma * sigma))).exp().matrix();
  }
  combined_.resize(r, r);
  combined_.setZero();
  for (int l = 0; l < s; ++l) combined_ += params.scales.betas[l] * scale_g_[l];

  // K(i,j) = sum_{a in i, b in j} count_a count_b combined(a,b), assembled
  // through T1 = combined * counts^T, then mirrored for exact symmetry.
  t1_.resize(r, n_);
  t1_.setZero();
  for (int j = 0; j < n_; ++j) {
    for (auto [b, c] : atlas_.graph_counts[j]) t1_.col(j) += c * combined_.col(b);
  }
  gram_.resize(n_, n_);
  for (int j = 0; j < n_; ++j) {
    const auto col = t1_.col(j);
    for (int i = 0; i < n_; ++i) {
      double acc = 0.0;
      for (auto [a, c] : atlas_.graph_counts[i]) acc += c * col[a];
      gram_(i, j) = acc;
    }
  }
  for (int i = 0; i < n_; ++i) {
    for (int j = i + 1; j < n_; ++j) gram_(j, i) = gram_(i, j);
  }

  decision_.noalias() = gram_ * params.svm.alpha;
  margins_ = labels_.y.cwiseProduct(decision_);
  double hinge = 0.0;
  for (int i = 0; i < n_; ++i) hinge += std::max(0.0, 1.0 - margins_[i]);
  objective_ = hinge + params.svm.lambda * params.svm.alpha.dot(decision_);
  have_forward_ = true;
  return objective_;
}

ParamGrads Pipeline::backward(const ModelParams& params) {
  if (!have_forward_) {
    throw std::logic_error("backward: no forward pass available");
  }
  const Eigen::MatrixXd& E = conv_fwd_.embeddings();
  const int r = static_cast<int>(E.rows());
  const int s = params.scales.count();
  const Eigen::VectorXd& alpha = params.svm.alpha;
  const double lambda = params.svm.lambda;

  // Active hinge terms; subgradient 0 at margin exactly 1.
  Eigen::VectorXd ay(n_);
  for (int i = 0; i < n_; ++i) {
    ay[i] = margins_[i] < 1.0 ? labels_.y[i] : 0.0;
  }

  // d objective / d K is the rank-1 matrix (lambda*alpha - ay) alpha^T;
  // pushed through the counts it stays rank-1: Wc = q r^T over signatures.
  Eigen::VectorXd q = Eigen::VectorXd::Zero(r);
  Eigen::VectorXd rv = Eigen::VectorXd::Zero(r);
  for (int i = 0; i < n_; ++i) {
    const double qi = lambda * alpha[i] - ay[i];
    for (auto [a, c] : atlas_.graph_counts[i]) {
      q[a] += c * qi;
      rv[a] += c * alpha[i];
    }
  }

  ParamGrads grads;
  grads.sigmas.resize(s);
  grads.betas.resize(s);

  // dL/dbeta_l = q^T G_l r ; dL/dsigma_l = (beta_l/sigma_l^3) q^T (G_l .* D) r
  for (int l = 0; l < s; ++l) {
    const Eigen::VectorXd glr = scale_g_[l] * rv;
    grads.betas[l] = q.dot(glr);
    double acc = 0.0;
    for (int b = 0; b < r; ++b) {
      acc += rv[b] * (q.array() * scale_g_[l].col(b).array() *
                      sq_dist_.col(b).array())
                         .sum();
    }
    const double sigma = params.scales.sigmas[l];
    grads.sigmas[l] = params.scales.betas[l] * acc / (sigma * sigma * sigma);
  }

  // dL/dE = (A - diag(A 1)) E with A = (q r^T + r q^T) .* C,
  // C = sum_l beta_l / sigma_l^2 * G_l, expanded so A is never materialized.
  combined_.setZero();
  for (int l = 0; l < s; ++l) {
    const double sigma = params.scales.sigmas[l];
    combined_ += (params.scales.betas[l] / (sigma * sigma)) * scale_g_[l];
  }
  const Eigen::VectorXd row_sum =
      q.cwiseProduct(combined_ * rv) + rv.cwiseProduct(combined_ * q);
  Eigen::MatrixXd d_embed =
      q.asDiagonal() * (combined_ * (rv.asDiagonal() * E)) +
      rv.asDiagonal() * (combined_ * (q.asDiagonal() * E)) -
      row_sum.asDiagonal() * E;

  const int layers = static_cast<int>(params.stack.layers.size());
  grads.weight.resize(layers);
  grads.bias.resize(layers);
  for (int t = 0; t < layers; ++t) {
    grads.weight[t] = Eigen::MatrixXd::Zero(params.stack.layers[t].out_dim(),
                                            2 * params.stack.layers[t].in_dim());
    grads.bias[t] = Eigen::VectorXd::Zero(params.stack.layers[t].out_dim());
  }
  refine::atlas_backward(atlas_, params.stack, conv_fwd_, d_embed,
                         grads.weight, grads.bias);

  // dL/dalpha_j = -sum_i act_i y_i K_ij + 2 lambda (K alpha)_j
  grads.alpha = -(gram_ * ay) + 2.0 * lambda * decision_;
  return grads;
}

double Pipeline::train_accuracy() const {
  if (!have_forward_) {
    throw std::logic_error("train_accuracy: no forward pass available");
  }
  int correct = 0;
  for (int i = 0; i < n_; ++i) {
    if (svm::predict(decision_[i]) == class_labels_[i]) ++correct;
  }
  return static_cast<double>(correct) / n_;
}

std::vector<conv::EmbeddingSet> Pipeline::embedding_sets() const {
  if (!have_forward_) {
    throw std::logic_error("embedding_sets: no forward pass available");
  }
  const Eigen::MatrixXd& E = conv_fwd_.embeddings();
  std::vector<conv::EmbeddingSet> sets(n_);
  for (int g = 0; g < n_; ++g) {
    const auto& ids = atlas_.vertex_ids[g];
    sets[g].vectors.resize(static_cast<int>(ids.size()), E.cols());
    for (std::size_t v = 0; v < ids.size(); ++v) {
      sets[g].vectors.row(static_cast<int>(v)) = E.row(ids[v]);
    }
  }
  return sets;
}

ForwardResult full_forward(const ModelParams& params,
                           std::span<const LabeledGraph> graphs,
                           const std::vector<int>& class_labels,
                           int alphabet_size) {
  Pipeline pipeline(graphs, class_labels, alphabet_size,
                    static_cast<int>(params.stack.layers.size()));
  ForwardResult result;
  result.objective = pipeline.forward(params);
  result.sets = pipeline.embedding_sets();
  result.gram.values = pipeline.gram();
  return result;
}

AdamState AdamState::init(const ModelParams& params, double learning_rate) {
  AdamState st;
  st.learning_rate = learning_rate;
  for (const auto& layer : params.stack.layers) {
    st.m_weight.push_back(
        Eigen::MatrixXd::Zero(layer.weight.rows(), layer.weight.cols()));
    st.v_weight.push_back(
        Eigen::MatrixXd::Zero(layer.weight.rows(), layer.weight.cols()));
    st.m_bias.push_back(Eigen::VectorXd::Zero(layer.bias.size()));
    st.v_bias.push_back(Eigen::VectorXd::Zero(layer.bias.size()));
  }
  const int s = params.scales.count();
  st.m_sigmas = Eigen::VectorXd::Zero(s);
  st.v_sigmas = Eigen::VectorXd::Zero(s);
  st.m_betas = Eigen::VectorXd::Zero(s);
  st.v_betas = Eigen::VectorXd::Zero(s);
  st.m_alpha = Eigen::VectorXd::Zero(params.svm.alpha.size());
  st.v_alpha = Eigen::VectorXd::Zero(params.svm.alpha.size());
  return st;
}

namespace {

template <typename T>
void adam_update(T& param, const T& grad, T& m, T& v, const AdamState& st,
                 double bc1, double bc2) {
  if (param.rows() != grad.rows() || param.cols() != grad.cols()) {
    throw std::invalid_argument("adam_step: gradient shape mismatch");
  }
  m = st.beta1 * m + (1.0 - st.beta1) * grad;
  v.array() = st.beta2 * v.array() + (1.0 - st.beta2) * grad.array().square();
  param.array() -= st.learning_rate * (m.array() / bc1) /
                   ((v.array() / bc2).sqrt() + st.epsilon);
}

}  // namespace

void adam_step(AdamState& state, ModelParams& params,
               const ParamGrads& grads) {
  if (grads.weight.size() != params.stack.layers.size()) {
    throw std::invalid_argument("adam_step: layer count mismatch");
  }
  state.step_count += 1;
  const double bc1 = 1.0 - std::pow(state.beta1, state.step_count);
  const double bc2 = 1.0 - std::pow(state.beta2, state.step_count);
  for (std::size_t t = 0; t < params.stack.layers.size(); ++t) {
    adam_update(params.stack.layers[t].weight, grads.weight[t],
                state.m_weight[t], state.v_weight[t], state, bc1, bc2);
    adam_update(params.stack.layers[t].bias, grads.bias[t], state.m_bias[t],
                state.v_bias[t], state, bc1, bc2);
  }
  adam_update(params.scales.sigmas, grads.sigmas, state.m_sigmas,
              state.v_sigmas, state, bc1, bc2);
  adam_update(params.scales.betas, grads.betas, state.m_betas, state.v_betas,
              state, bc1, bc2);
  adam_update(params.svm.alpha, grads.alpha, state.m_alpha, state.v_alpha,
              state, bc1, bc2);
}

void project(ModelParams& params) {
  params.scales.betas = params.scales.betas.cwiseMax(0.0);
  params.scales.sigmas = params.scales.sigmas.cwiseMax(kernel::kSigmaMin);
}

ModelParams train(const TrainConfig& config,
                  std::span<const LabeledGraph> graphs,
                  const std::vector<int>& class_labels, int alphabet_size,
                  const EpochObserver& observer) {
  config.validate();
  int count0 = 0, count1 = 0;
  for (int y : class_labels) (y == 0 ? count0 : count1)++;
  if (count0 == 0 || count1 == 0) {
    throw std::invalid_argument("train: single-class training set");
  }

  Pipeline pipeline(graphs, class_labels, alphabet_size, config.conv_layers);
  ModelParams params =
      init_params(config, alphabet_size, static_cast<int>(graphs.size()));
  AdamState adam = AdamState::init(params, config.learning_rate);

  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    const double objective = pipeline.forward(params);
    const ParamGrads grads = pipeline.backward(params);
    adam_step(adam, params, grads);
    project(params);
    if (observer) {
      observer({epoch, objective, pipeline.train_accuracy()}, params);
    }
  }
  return params;
}

std::vector<int> predict_graphs(const ModelParams& params,
                                std::span<const conv::EmbeddingSet> train_sets,
                                std::span<const LabeledGraph> test_graphs) {
  if (static_cast<Eigen::Index>(train_sets.size()) !=
      params.svm.alpha.size()) {
    throw std::invalid_argument("predict_graphs: train size != alpha length");
  }
  const int alphabet_size = params.stack.input_dim();
  std::vector<int> out;
  out.reserve(test_graphs.size());
  for (const auto& graph : test_graphs) {
    const conv::EmbeddingSet set =
        conv::stack_forward(graph, params.stack, alphabet_size);
    double decision = 0.0;
    for (std::size_t j = 0; j < train_sets.size(); ++j) {
      decision += params.svm.alpha[static_cast<Eigen::Index>(j)] *
                  kernel::multiscale_kernel(set, train_sets[j], params.scales);
    }
    out.push_back(svm::predict(decision));
  }
  return out;
}

}  // namespace gksvm::trainer
