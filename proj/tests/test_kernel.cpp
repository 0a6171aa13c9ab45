#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <initializer_list>

#include "gksvm/kernel.hpp"
#include "oracles.hpp"

using gksvm::Rng;
using gksvm::conv::EmbeddingSet;
namespace kernel = gksvm::kernel;

namespace {

EmbeddingSet make_set(std::initializer_list<std::initializer_list<double>> rows) {
  EmbeddingSet set;
  const int n = static_cast<int>(rows.size());
  const int d = static_cast<int>(rows.begin()->size());
  set.vectors.resize(n, d);
  int i = 0;
  for (const auto& row : rows) {
    int j = 0;
    for (double v : row) set.vectors(i, j++) = v;
    ++i;
  }
  return set;
}

kernel::ScaleParams make_scales(std::initializer_list<double> sigmas,
                                std::initializer_list<double> betas) {
  kernel::ScaleParams s;
  s.sigmas = Eigen::Map<const Eigen::VectorXd>(sigmas.begin(),
                                               (Eigen::Index)sigmas.size());
  s.betas = Eigen::Map<const Eigen::VectorXd>(betas.begin(),
                                              (Eigen::Index)betas.size());
  return s;
}

}  // namespace

TEST_CASE("gaussian: identical inputs give exactly 1") {
  Eigen::VectorXd u(3);
  u << 0.3, -1.7, 2.2;
  CHECK(kernel::gaussian(u, u, 0.5) == 1.0);
}

TEST_CASE("gaussian: unit distance at sigma 1 is exp(-1/2)") {
  Eigen::VectorXd u(2), v(2);
  u << 0.0, 0.0;
  v << 1.0, 0.0;
  const double got = kernel::gaussian(u, v, 1.0);
  CHECK(got == doctest::Approx(std::exp(-0.5)).epsilon(1e-15));
  CHECK(got == doctest::Approx(0.606531).epsilon(1e-6));
}

TEST_CASE("gaussian: symmetric and in (0, 1] on random draws") {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    Eigen::VectorXd u(3), v(3);
    for (int c = 0; c < 3; ++c) {
      u[c] = rng.normal();
      v[c] = rng.normal();
    }
    const double sigma = 0.2 + rng.uniform01();
    const double uv = kernel::gaussian(u, v, sigma);
    CHECK(uv == kernel::gaussian(v, u, sigma));
    CHECK(uv > 0.0);
    CHECK(uv <= 1.0);
  }
}

TEST_CASE("gaussian: rejects mismatched dimensions and tiny sigma") {
  Eigen::VectorXd u(2), v(3);
  u.setZero();
  v.setZero();
  CHECK_THROWS_AS(kernel::gaussian(u, v, 1.0), std::invalid_argument);
  Eigen::VectorXd w(2);
  w.setZero();
  CHECK_THROWS_AS(kernel::gaussian(u, w, 1e-6), std::invalid_argument);
}

TEST_CASE("set_kernel: singletons reduce to the base kernel") {
  const auto X = make_set({{0.0, 0.0}});
  const auto Y = make_set({{1.0, 0.0}});
  Eigen::VectorXd u(2), v(2);
  u << 0.0, 0.0;
  v << 1.0, 0.0;
  CHECK(kernel::set_kernel(X, Y, 1.3) == kernel::gaussian(u, v, 1.3));
}

TEST_CASE("set_kernel: near-flat kernel saturates at |X| * |Y|") {
  Rng rng(5);
  EmbeddingSet X3, Y4;
  X3.vectors.resize(3, 2);
  Y4.vectors.resize(4, 2);
  for (int i = 0; i < 3; ++i) {
    for (int c = 0; c < 2; ++c) X3.vectors(i, c) = rng.normal();
  }
  for (int i = 0; i < 4; ++i) {
    for (int c = 0; c < 2; ++c) Y4.vectors(i, c) = rng.normal();
  }
  const double v = kernel::set_kernel(X3, Y4, 1e12);
  CHECK(v == doctest::Approx(12.0).epsilon(1e-6));
}

TEST_CASE("set_kernel: hand-computed two-point example") {
  const auto X = make_set({{0.0}, {1.0}});
  const auto Y = make_set({{0.0}});
  const double got = kernel::set_kernel(X, Y, 1.0);
  CHECK(got == doctest::Approx(1.0 + std::exp(-0.5)).epsilon(1e-15));
  CHECK(got == doctest::Approx(1.606531).epsilon(1e-6));
}

TEST_CASE("set_kernel: brute-force double-sum oracle on random pairs") {
  Rng rng(101);
  for (int trial = 0; trial < 120; ++trial) {
    const int dim = 1 + static_cast<int>(rng.below(3));
    const auto X = oracle::random_set(rng, 5, dim);
    const auto Y = oracle::random_set(rng, 5, dim);
    const double sigma = 0.3 + 2.0 * rng.uniform01();
    const double got = kernel::set_kernel(X, Y, sigma);
    const double want = oracle::set_kernel(X, Y, sigma);
    CHECK(oracle::rel_close(got, want, 1e-12));
    CHECK(oracle::rel_close(got, kernel::set_kernel(Y, X, sigma), 1e-13));
    CHECK(got > 0.0);
    CHECK(got <= static_cast<double>(X.size()) * Y.size());
  }
}

TEST_CASE("set_kernel: rejects empty sets and dimension mismatches") {
  EmbeddingSet empty;
  empty.vectors.resize(0, 2);
  const auto X = make_set({{0.0, 0.0}});
  CHECK_THROWS_AS(kernel::set_kernel(empty, X, 1.0), std::invalid_argument);
  const auto Z = make_set({{1.0, 2.0, 3.0}});
  CHECK_THROWS_AS(kernel::set_kernel(X, Z, 1.0), std::invalid_argument);
}

TEST_CASE("set_kernel: additivity in the first argument") {
  Rng rng(77);
  for (int trial = 0; trial < 60; ++trial) {
    const int dim = 2;
    const auto X = oracle::random_set(rng, 4, dim);
    const auto Y = oracle::random_set(rng, 4, dim);
    Eigen::VectorXd extra(dim);
    for (int c = 0; c < dim; ++c) extra[c] = rng.normal();
    EmbeddingSet Xplus;
    Xplus.vectors.resize(X.size() + 1, dim);
    Xplus.vectors.topRows(X.size()) = X.vectors;
    Xplus.vectors.row(X.size()) = extra.transpose();
    const double sigma = 0.4 + rng.uniform01();

    double cross = 0.0;
    for (int j = 0; j < Y.size(); ++j) {
      cross += kernel::gaussian(extra, Y.vectors.row(j).transpose(), sigma);
    }
    const double lhs = kernel::set_kernel(Xplus, Y, sigma);
    const double rhs = kernel::set_kernel(X, Y, sigma) + cross;
    CHECK(oracle::rel_close(lhs, rhs, 1e-12));
  }
}

TEST_CASE("set_kernel: sigma sweeps monotonically for distinct singletons") {
  const auto X = make_set({{0.0, 0.0}});
  const auto Y = make_set({{2.0, 1.0}});
  double prev = kernel::set_kernel(X, Y, kernel::kSigmaMin);
  CHECK(prev < 1e-9);  // near-indicator regime
  for (double sigma : {0.5, 1.0, 2.0, 8.0, 64.0, 1e4}) {
    const double cur = kernel::set_kernel(X, Y, sigma);
    CHECK(cur > prev);
    prev = cur;
  }
  CHECK(prev > 1.0 - 1e-6);
}

TEST_CASE("multiscale_kernel: single scale with unit weight") {
  Rng rng(3);
  const auto X = oracle::random_set(rng, 4, 2);
  const auto Y = oracle::random_set(rng, 4, 2);
  const auto scales = make_scales({0.9}, {1.0});
  CHECK(kernel::multiscale_kernel(X, Y, scales) ==
        kernel::set_kernel(X, Y, 0.9));
}

TEST_CASE("multiscale_kernel: all-zero weights give zero") {
  Rng rng(4);
  const auto X = oracle::random_set(rng, 4, 2);
  const auto Y = oracle::random_set(rng, 4, 2);
  const auto scales = make_scales({0.9, 2.0}, {0.0, 0.0});
  CHECK(kernel::multiscale_kernel(X, Y, scales) == 0.0);
}

TEST_CASE("multiscale_kernel: weighted composition of per-scale values") {
  Rng rng(6);
  const auto X = oracle::random_set(rng, 4, 2);
  const auto Y = oracle::random_set(rng, 4, 2);
  const auto scales = make_scales({0.7, 1.9}, {1.0, 2.0});
  const double a = oracle::set_kernel(X, Y, 0.7);
  const double b = oracle::set_kernel(X, Y, 1.9);
  CHECK(oracle::rel_close(kernel::multiscale_kernel(X, Y, scales), a + 2.0 * b,
                          1e-12));
}

TEST_CASE("multiscale_kernel: rejects invalid scale parameters") {
  Rng rng(8);
  const auto X = oracle::random_set(rng, 3, 2);
  auto bad_sigma = make_scales({0.0}, {1.0});
  CHECK_THROWS_AS(kernel::multiscale_kernel(X, X, bad_sigma),
                  std::invalid_argument);
  auto bad_beta = make_scales({1.0}, {-0.5});
  CHECK_THROWS_AS(kernel::multiscale_kernel(X, X, bad_beta),
                  std::invalid_argument);
}

TEST_CASE("gram: one set yields its self-kernel") {
  Rng rng(9);
  const std::vector<EmbeddingSet> sets{oracle::random_set(rng, 4, 2)};
  const auto scales = make_scales({1.1}, {0.8});
  const auto gm = kernel::gram(sets, scales);
  CHECK(gm.n() == 1);
  CHECK(gm.values(0, 0) ==
        kernel::multiscale_kernel(sets[0], sets[0], scales));
}

TEST_CASE("gram: exactly symmetric, PSD within tolerance") {
  Rng rng(10);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(5));  // up to 6 sets
    std::vector<EmbeddingSet> sets;
    for (int i = 0; i < n; ++i) sets.push_back(oracle::random_set(rng, 4, 2));
    const auto scales =
        make_scales({0.3 + rng.uniform01(), 0.3 + 2.0 * rng.uniform01()},
                    {rng.uniform01(), 2.0 * rng.uniform01()});
    const auto gm = kernel::gram(sets, scales);
    CHECK(gm.values == gm.values.transpose().eval());

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gm.values);
    const double max_diag = gm.values.diagonal().maxCoeff();
    CHECK(eig.eigenvalues().minCoeff() >= -1e-8 * max_diag);
  }
}

TEST_CASE("gram: reversing the set list transposes indices") {
  Rng rng(12);
  const int n = 5;
  std::vector<EmbeddingSet> sets;
  for (int i = 0; i < n; ++i) sets.push_back(oracle::random_set(rng, 4, 2));
  std::vector<EmbeddingSet> reversed(sets.rbegin(), sets.rend());
  const auto scales = make_scales({0.8}, {1.0});
  const auto g1 = kernel::gram(sets, scales);
  const auto g2 = kernel::gram(reversed, scales);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      CHECK(oracle::rel_close(g1.values(i, j), g2.values(n - 1 - j, n - 1 - i),
                              1e-13));
    }
  }
}

TEST_CASE("gram: scaling all betas scales every entry") {
  Rng rng(13);
  std::vector<EmbeddingSet> sets;
  for (int i = 0; i < 4; ++i) sets.push_back(oracle::random_set(rng, 4, 2));
  const auto scales = make_scales({0.6, 1.7}, {0.9, 0.4});
  auto scaled = scales;
  scaled.betas *= 3.0;
  const auto g1 = kernel::gram(sets, scales);
  const auto g2 = kernel::gram(sets, scaled);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      CHECK(oracle::rel_close(g2.values(i, j), 3.0 * g1.values(i, j), 1e-13));
    }
  }
}

TEST_CASE("gram_per_scale: combined matches gram, per-scale matches oracle") {
  Rng rng(14);
  std::vector<EmbeddingSet> sets;
  for (int i = 0; i < 5; ++i) sets.push_back(oracle::random_set(rng, 4, 3));
  const auto scales = make_scales({0.5, 1.5}, {1.2, 0.7});
  const auto ms = kernel::gram_per_scale(sets, scales);
  const auto gm = kernel::gram(sets, scales);
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) {
      CHECK(oracle::rel_close(ms.combined.values(i, j), gm.values(i, j),
                              1e-13));
      CHECK(oracle::rel_close(ms.per_scale[0](i, j),
                              oracle::set_kernel(sets[i], sets[j], 0.5),
                              1e-12));
    }
  }
}

TEST_CASE("mean_map_grid: singleton peak equals 1 and values bound by |X|") {
  const auto X = make_set({{0.25, -0.5}});
  std::vector<Eigen::VectorXd> grid;
  grid.push_back(X.vectors.row(0).transpose());
  Eigen::VectorXd off(2);
  off << 4.0, 4.0;
  grid.push_back(off);
  const auto values = kernel::mean_map_grid(X, 0.7, grid);
  CHECK(values[0] == 1.0);
  CHECK(values[1] < 1.0);

  Rng rng(15);
  const auto Y = oracle::random_set(rng, 6, 2);
  const auto more = kernel::mean_map_grid(Y, 0.5, grid);
  for (double v : more) CHECK(v <= static_cast<double>(Y.size()));
}

TEST_CASE("mean_map_grid: summing over the other set recovers set_kernel") {
  Rng rng(16);
  for (int trial = 0; trial < 30; ++trial) {
    const auto X = oracle::random_set(rng, 5, 2);
    const auto Y = oracle::random_set(rng, 5, 2);
    const double sigma = 0.4 + rng.uniform01();
    std::vector<Eigen::VectorXd> grid;
    for (int j = 0; j < Y.size(); ++j) {
      grid.push_back(Y.vectors.row(j).transpose());
    }
    const auto values = kernel::mean_map_grid(X, sigma, grid);
    double total = 0.0;
    for (double v : values) total += v;
    CHECK(oracle::rel_close(total, kernel::set_kernel(X, Y, sigma), 1e-12));
  }
}

TEST_CASE("mean_map_csv_2d: header, row count, and 2-D requirement") {
  const auto X = make_set({{0.0, 0.0}, {1.0, 1.0}});
  const std::string csv = kernel::mean_map_csv_2d(X, 0.5, -1.0, 1.0, 5);
  CHECK(csv.rfind("x,y,value\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 25);
  const auto bad = make_set({{0.0, 0.0, 0.0}});
  CHECK_THROWS_AS(kernel::mean_map_csv_2d(bad, 0.5, -1.0, 1.0, 5),
                  std::invalid_argument);
}
