#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "gksvm/conv.hpp"
#include "oracles.hpp"

using gksvm::LabeledGraph;
using gksvm::Rng;
namespace conv = gksvm::conv;

namespace {

LabeledGraph path3() {
  LabeledGraph g;
  g.vertex_count = 3;
  g.vertex_labels = {0, 1, 2};
  g.edges = {{0, 1}, {1, 2}};
  return g;
}

conv::ConvStack random_stack(Rng& rng, int alphabet, int hidden, int layers) {
  conv::ConvStack stack;
  int in = alphabet;
  for (int t = 0; t < layers; ++t) {
    conv::ConvLayerParams p;
    p.weight = conv::kaiming_init(hidden, 2 * in, rng);
    p.bias = Eigen::VectorXd::Zero(hidden);
    for (int o = 0; o < hidden; ++o) p.bias[o] = 0.1 * rng.normal();
    stack.layers.push_back(std::move(p));
    in = hidden;
  }
  return stack;
}

LabeledGraph permute(const LabeledGraph& g, const std::vector<int>& perm) {
  LabeledGraph out;
  out.vertex_count = g.vertex_count;
  out.vertex_labels.resize(g.vertex_count);
  for (int v = 0; v < g.vertex_count; ++v) {
    out.vertex_labels[perm[v]] = g.vertex_labels[v];
  }
  for (auto [a, b] : g.edges) out.edges.emplace_back(perm[a], perm[b]);
  out.normalize();
  return out;
}

}  // namespace

TEST_CASE("message: isolated vertex gives the zero vector") {
  LabeledGraph g;
  g.vertex_count = 2;
  g.vertex_labels = {0, 0};
  Eigen::MatrixXd H = Eigen::MatrixXd::Random(2, 4);
  CHECK(conv::message(g, H, 0) == Eigen::VectorXd::Zero(4));
}

TEST_CASE("message: path interior vertex sums both neighbors") {
  const LabeledGraph g = path3();
  const Eigen::MatrixXd H = Eigen::MatrixXd::Identity(3, 3);
  const Eigen::VectorXd m = conv::message(g, H, 1);
  Eigen::VectorXd want(3);
  want << 1, 0, 1;
  CHECK(m == want);
}

TEST_CASE("message: star center sums all leaves") {
  LabeledGraph g;
  g.vertex_count = 4;
  g.vertex_labels = {0, 0, 0, 0};
  g.edges = {{0, 1}, {0, 2}, {0, 3}};
  Eigen::MatrixXd H(4, 2);
  H << 0, 0, 1, 1, 1, 1, 1, 1;
  const Eigen::VectorXd m = conv::message(g, H, 0);
  Eigen::VectorXd want(2);
  want << 3, 3;
  CHECK(m == want);
}

TEST_CASE("message: vertex index out of range") {
  const LabeledGraph g = path3();
  const Eigen::MatrixXd H = Eigen::MatrixXd::Zero(3, 2);
  CHECK_THROWS_AS(conv::message(g, H, 3), std::invalid_argument);
  CHECK_THROWS_AS(conv::message(g, H, -1), std::invalid_argument);
}

TEST_CASE("layer_forward: zero parameters map everything to zero") {
  const LabeledGraph g = path3();
  const Eigen::MatrixXd H = gksvm::one_hot(g, 3);
  conv::ConvLayerParams p;
  p.weight = Eigen::MatrixXd::Zero(5, 6);
  p.bias = Eigen::VectorXd::Zero(5);
  CHECK(conv::layer_forward(g, H, p) == Eigen::MatrixXd::Zero(3, 5));
}

TEST_CASE("layer_forward: identity blocks pass an isolated vertex through") {
  LabeledGraph g;
  g.vertex_count = 1;
  g.vertex_labels = {0};
  Eigen::MatrixXd H(1, 3);
  H << 0.5, 0.0, 2.0;
  conv::ConvLayerParams p;
  p.weight.resize(3, 6);
  p.weight << Eigen::MatrixXd::Identity(3, 3), Eigen::MatrixXd::Identity(3, 3);
  p.bias = Eigen::VectorXd::Zero(3);
  CHECK(conv::layer_forward(g, H, p) == H);
}

TEST_CASE("layer_forward: one-dimensional hand example") {
  LabeledGraph g;
  g.vertex_count = 2;
  g.vertex_labels = {0, 0};
  g.edges = {{0, 1}};
  Eigen::MatrixXd H(2, 1);
  H << 1.0, 2.0;
  conv::ConvLayerParams p;
  p.weight.resize(1, 2);
  p.weight << 1.0, 1.0;
  p.bias = Eigen::VectorXd::Zero(1);
  Eigen::MatrixXd want(2, 1);
  want << 3.0, 3.0;
  CHECK(conv::layer_forward(g, H, p) == want);
}

TEST_CASE("layer_forward: dimension mismatch is rejected") {
  const LabeledGraph g = path3();
  const Eigen::MatrixXd H = gksvm::one_hot(g, 3);
  conv::ConvLayerParams p;
  p.weight = Eigen::MatrixXd::Zero(5, 4);  // expects in_dim 2, H has 3
  p.bias = Eigen::VectorXd::Zero(5);
  CHECK_THROWS_AS(conv::layer_forward(g, H, p), std::invalid_argument);
}

TEST_CASE("stack_forward: zero second layer yields zero embeddings") {
  Rng rng(31);
  const LabeledGraph g = oracle::random_graph(rng, 6, 0.5, 3);
  conv::ConvStack stack = random_stack(rng, 3, 4, 2);
  stack.layers[1].weight.setZero();
  stack.layers[1].bias.setZero();
  const auto set = conv::stack_forward(g, stack, 3);
  CHECK(set.vectors == Eigen::MatrixXd::Zero(g.vertex_count, 4));
}

TEST_CASE("stack_forward: matches the per-vertex oracle") {
  Rng rng(32);
  for (int trial = 0; trial < 40; ++trial) {
    const LabeledGraph g = oracle::random_graph(rng, 7, 0.4, 3);
    const conv::ConvStack stack = random_stack(rng, 3, 3, 2);
    const auto fast = conv::stack_forward(g, stack, 3);
    const auto ref = oracle::stack_forward(g, stack, 3);
    REQUIRE(fast.vectors.rows() == ref.vectors.rows());
    for (int v = 0; v < g.vertex_count; ++v) {
      for (int c = 0; c < 3; ++c) {
        CHECK(oracle::rel_close(fast.vectors(v, c), ref.vectors(v, c), 1e-12));
      }
    }
  }
}

TEST_CASE("stack_forward: permutation equivariance is exact") {
  Rng rng(33);
  for (int trial = 0; trial < 25; ++trial) {
    const LabeledGraph g = oracle::random_graph(rng, 8, 0.4, 3);
    const conv::ConvStack stack = random_stack(rng, 3, 4, 2);
    std::vector<int> perm(g.vertex_count);
    std::iota(perm.begin(), perm.end(), 0);
    rng.shuffle(perm);
    const LabeledGraph h = permute(g, perm);

    const auto orig = conv::stack_forward(g, stack, 3);
    const auto shuf = conv::stack_forward(h, stack, 3);
    for (int v = 0; v < g.vertex_count; ++v) {
      CHECK(orig.vectors.row(v) == shuf.vectors.row(perm[v]));
    }
  }
}

TEST_CASE("stack_forward: outputs are non-negative, dimension = hidden") {
  Rng rng(34);
  for (int trial = 0; trial < 20; ++trial) {
    const LabeledGraph g = oracle::random_graph(rng, 9, 0.3, 4);
    const conv::ConvStack stack = random_stack(rng, 4, 5, 2);
    const auto set = conv::stack_forward(g, stack, 4);
    CHECK(set.dim() == 5);
    CHECK(set.size() == g.vertex_count);
    CHECK(set.vectors.minCoeff() >= 0.0);
  }
}

TEST_CASE("stack_forward: locality of a label change is two hops") {
  // Path of 7 vertices: changing vertex 0's label may only affect
  // embeddings of vertices within distance 2.
  LabeledGraph g;
  g.vertex_count = 7;
  g.vertex_labels = {0, 0, 0, 0, 0, 0, 0};
  for (int v = 0; v + 1 < 7; ++v) g.edges.emplace_back(v, v + 1);
  Rng rng(35);
  const conv::ConvStack stack = random_stack(rng, 2, 3, 2);

  const auto base = conv::stack_forward(g, stack, 2);
  LabeledGraph changed = g;
  changed.vertex_labels[0] = 1;
  const auto moved = conv::stack_forward(changed, stack, 2);
  for (int v = 3; v < 7; ++v) {
    CHECK(base.vectors.row(v) == moved.vectors.row(v));
  }
  CHECK(base.vectors.row(0) != moved.vectors.row(0));
}

TEST_CASE("stack_forward: deterministic across calls") {
  Rng rng(36);
  const LabeledGraph g = oracle::random_graph(rng, 8, 0.5, 3);
  const conv::ConvStack stack = random_stack(rng, 3, 4, 2);
  const auto a = conv::stack_forward(g, stack, 3);
  const auto b = conv::stack_forward(g, stack, 3);
  CHECK(a.vectors == b.vectors);
}

TEST_CASE("kaiming_init: variance scale and determinism") {
  Rng rng_a(99), rng_b(99);
  const Eigen::MatrixXd A = conv::kaiming_init(1000, 1000, rng_a);
  const Eigen::MatrixXd B = conv::kaiming_init(1000, 1000, rng_b);
  CHECK(A == B);

  const double mean = A.mean();
  const double var = (A.array() - mean).square().mean();
  const double want = 2.0 / 1000.0;
  CHECK(std::abs(var - want) <= 0.05 * want);
  CHECK(std::abs(mean) < 0.001);

  CHECK_THROWS_AS(conv::kaiming_init(0, 5, rng_a), std::invalid_argument);
  CHECK_THROWS_AS(conv::kaiming_init(5, 0, rng_a), std::invalid_argument);
}
