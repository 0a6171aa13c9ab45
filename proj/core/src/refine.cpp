#include "gksvm/refine.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "gksvm/conv.hpp"

namespace gksvm::refine {

Atlas build_atlas(std::span<const LabeledGraph> graphs, int alphabet_size,
                  int rounds) {
  if (alphabet_size <= 0) {
    throw std::invalid_argument("atlas: alphabet_size must be positive");
  }
  if (rounds < 1) throw std::invalid_argument("atlas: rounds must be >= 1");

  Atlas atlas;
  atlas.alphabet_size = alphabet_size;
  atlas.rounds.resize(rounds);

  std::vector<std::vector<std::vector<int>>> adj(graphs.size());
  std::vector<std::vector<int>> current(graphs.size());
  for (std::size_t g = 0; g < graphs.size(); ++g) {
    graphs[g].validate(alphabet_size);
    adj[g] = graphs[g].adjacency();
    current[g] = graphs[g].vertex_labels;
  }

  for (int t = 0; t < rounds; ++t) {
    // Key: [own id, sorted neighbor ids with repeats]. std::map orders keys
    // lexicographically, which fixes the canonical id assignment.
    std::map<std::vector<int>, int> ids;
    std::vector<std::vector<std::vector<int>>> keys(graphs.size());
    for (std::size_t g = 0; g < graphs.size(); ++g) {
      keys[g].resize(graphs[g].vertex_count);
      for (int v = 0; v < graphs[g].vertex_count; ++v) {
        std::vector<int>& key = keys[g][v];
        key.reserve(adj[g][v].size() + 1);
        key.push_back(current[g][v]);
        for (int w : adj[g][v]) key.push_back(current[g][w]);
        std::sort(key.begin() + 1, key.end());
        ids.emplace(key, -1);
      }
    }
    int next = 0;
    for (auto& [key, id] : ids) id = next++;

    atlas.rounds[t].resize(ids.size());
    for (const auto& [key, id] : ids) {
      Signature& sig = atlas.rounds[t][id];
      sig.self = key[0];
      for (std::size_t p = 1; p < key.size();) {
        std::size_t q = p;
        while (q < key.size() && key[q] == key[p]) ++q;
        sig.neighbors.emplace_back(key[p], static_cast<int>(q - p));
        p = q;
      }
    }
    for (std::size_t g = 0; g < graphs.size(); ++g) {
      for (int v = 0; v < graphs[g].vertex_count; ++v) {
        current[g][v] = ids.at(keys[g][v]);
      }
    }
  }

  atlas.vertex_ids = current;
  atlas.graph_counts.resize(graphs.size());
  for (std::size_t g = 0; g < graphs.size(); ++g) {
    std::map<int, double> counts;
    for (int id : current[g]) counts[id] += 1.0;
    atlas.graph_counts[g].assign(counts.begin(), counts.end());
  }
  return atlas;
}

AtlasForward atlas_forward(const Atlas& atlas, const conv::ConvStack& stack) {
  stack.validate();
  if (static_cast<int>(stack.layers.size()) != atlas.round_count()) {
    throw std::invalid_argument("atlas_forward: layer/round count mismatch");
  }
  if (stack.input_dim() != atlas.alphabet_size) {
    throw std::invalid_argument("atlas_forward: input dim != alphabet size");
  }

  AtlasForward fwd;
  const int rounds = atlas.round_count();
  fwd.inputs.resize(rounds);
  fwd.preacts.resize(rounds);
  fwd.acts.resize(rounds);

  // Round 0 activations are the one-hot identity; later rounds read rows of
  // the previous activation table, always in ascending id order.
  Eigen::MatrixXd prev =
      Eigen::MatrixXd::Identity(atlas.alphabet_size, atlas.alphabet_size);
  for (int t = 0; t < rounds; ++t) {
    const conv::ConvLayerParams& layer = stack.layers[t];
    const int d = layer.in_dim();
    const int n_ids = atlas.ids_at(t + 1);
    Eigen::MatrixXd& X = fwd.inputs[t];
    X.setZero(n_ids, 2 * d);
    for (int id = 0; id < n_ids; ++id) {
      const Signature& sig = atlas.rounds[t][id];
      X.row(id).head(d) = prev.row(sig.self);
      for (auto [nbr, count] : sig.neighbors) {
        X.row(id).tail(d) += static_cast<double>(count) * prev.row(nbr);
      }
    }
    fwd.preacts[t].noalias() = X * layer.weight.transpose();
    fwd.preacts[t].rowwise() += layer.bias.transpose();
    fwd.acts[t] = fwd.preacts[t].cwiseMax(0.0);
    prev = fwd.acts[t];
  }
  return fwd;
}

void atlas_backward(const Atlas& atlas, const conv::ConvStack& stack,
                    const AtlasForward& fwd, const Eigen::MatrixXd& d_embed,
                    std::vector<Eigen::MatrixXd>& d_weight,
                    std::vector<Eigen::VectorXd>& d_bias) {
  const int rounds = atlas.round_count();
  if (static_cast<int>(d_weight.size()) != rounds ||
      static_cast<int>(d_bias.size()) != rounds) {
    throw std::invalid_argument("atlas_backward: gradient shape mismatch");
  }

  Eigen::MatrixXd d_act = d_embed;
  for (int t = rounds - 1; t >= 0; --t) {
    const conv::ConvLayerParams& layer = stack.layers[t];
    const int d = layer.in_dim();

    // ReLU subgradient: 0 at exactly 0.
    Eigen::MatrixXd d_pre =
        (fwd.preacts[t].array() > 0.0).select(d_act, 0.0);

    d_weight[t].noalias() += d_pre.transpose() * fwd.inputs[t];
    d_bias[t].noalias() += d_pre.colwise().sum().transpose();

    if (t == 0) break;  // round-0 activations are constant one-hots
    Eigen::MatrixXd d_input = d_pre * layer.weight;  // ids x 2d
    d_act.setZero(atlas.ids_at(t), d);
    for (int id = 0; id < atlas.ids_at(t + 1); ++id) {
      const Signature& sig = atlas.rounds[t][id];
      d_act.row(sig.self) += d_input.row(id).head(d);
      for (auto [nbr, count] : sig.neighbors) {
        d_act.row(nbr) += static_cast<double>(count) * d_input.row(id).tail(d);
      }
    }
  }
}

}  // namespace gksvm::refine
