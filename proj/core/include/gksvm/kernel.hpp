#pragma once

#include <Eigen/Core>
#include <span>
#include <string>
#include <vector>

#include "gksvm/conv.hpp"

namespace gksvm::kernel {

using conv::EmbeddingSet;

/// Floor for the Gaussian bandwidth. The projection step clamps sigma here
/// instead of 0, where the kernel is undefined.
inline constexpr double kSigmaMin = 1e-4;

/// Bandwidths and non-negative mixture weights of the multi-scale kernel.
struct ScaleParams {
  Eigen::VectorXd sigmas;
  Eigen::VectorXd betas;

  int count() const { return static_cast<int>(sigmas.size()); }
  void validate() const;
};

/// Symmetric matrix of pairwise multi-scale set-kernel values.
struct GramMatrix {
  Eigen::MatrixXd values;

  int n() const { return static_cast<int>(values.rows()); }
};

/// exp(-||u - v||^2 / (2 sigma^2)), in (0, 1], equal to 1 iff u == v.
double gaussian(const Eigen::VectorXd& u, const Eigen::VectorXd& v,
                double sigma);

/// Inner product of the two sets' Gaussian mean maps: the double sum of the
/// base kernel over all cross pairs. Both sets must be non-empty.
double set_kernel(const EmbeddingSet& X, const EmbeddingSet& Y, double sigma);

/// Beta-weighted sum of per-scale set kernels.
double multiscale_kernel(const EmbeddingSet& X, const EmbeddingSet& Y,
                         const ScaleParams& scales);

/// n x n Gram matrix; each unordered pair computed once and mirrored, so
/// the result is exactly symmetric.
GramMatrix gram(std::span<const EmbeddingSet> sets, const ScaleParams& scales);

/// Gram assembly that also keeps every per-scale set-kernel matrix; the
/// gradient of the objective with respect to beta_l reads per_scale[l]
/// directly instead of recomputing it.
struct MultiscaleGram {
  GramMatrix combined;
  std::vector<Eigen::MatrixXd> per_scale;
};
MultiscaleGram gram_per_scale(std::span<const EmbeddingSet> sets,
                              const ScaleParams& scales);

/// Evaluates the set's mean-map function at each grid point:
/// out[g] = sum_v gaussian(v, grid[g], sigma).
std::vector<double> mean_map_grid(const EmbeddingSet& X, double sigma,
                                  const std::vector<Eigen::VectorXd>& grid);

/// CSV `x,y,value` rows over a steps x steps grid on [lo, hi]^2.
/// Requires a 2-dimensional embedding set.
std::string mean_map_csv_2d(const EmbeddingSet& X, double sigma, double lo,
                            double hi, int steps);

}  // namespace gksvm::kernel
