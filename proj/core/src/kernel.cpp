#include "gksvm/kernel.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "gksvm/format.hpp"

namespace gksvm::kernel {
namespace {

void check_sigma(double sigma) {
  if (!(sigma >= kSigmaMin)) {
    throw std::invalid_argument("kernel: sigma below sigma_min");
  }
}

void check_pair(const EmbeddingSet& X, const EmbeddingSet& Y) {
  if (X.size() == 0 || Y.size() == 0) {
    throw std::invalid_argument("kernel: empty embedding set");
  }
  if (X.dim() != Y.dim()) {
    throw std::invalid_argument("kernel: embedding dimension mismatch");
  }
}

}  // namespace

void ScaleParams::validate() const {
  if (sigmas.size() != betas.size() || sigmas.size() == 0) {
    throw std::invalid_argument("scales: sigmas/betas length mismatch");
  }
  for (int l = 0; l < count(); ++l) {
    if (!(sigmas[l] >= kSigmaMin)) {
      throw std::invalid_argument("scales: sigma below sigma_min");
    }
    if (!(betas[l] >= 0.0)) {
      throw std::invalid_argument("scales: negative beta");
    }
  }
}

double gaussian(const Eigen::VectorXd& u, const Eigen::VectorXd& v,
                double sigma) {
  if (u.size() != v.size()) {
    throw std::invalid_argument("gaussian: dimension mismatch");
  }
  check_sigma(sigma);
  const double d2 = (u - v).squaredNorm();
  return std::exp(-d2 / (2.0 * sigma * sigma));
}

double set_kernel(const EmbeddingSet& X, const EmbeddingSet& Y, double sigma) {
  check_pair(X, Y);
  check_sigma(sigma);
  const double inv = -1.0 / (2.0 * sigma * sigma);
  double sum = 0.0;
  for (int i = 0; i < X.size(); ++i) {
    for (int j = 0; j < Y.size(); ++j) {
      sum += std::exp(inv *
                      (X.vectors.row(i) - Y.vectors.row(j)).squaredNorm());
    }
  }
  return sum;
}

double multiscale_kernel(const EmbeddingSet& X, const EmbeddingSet& Y,
                         const ScaleParams& scales) {
  scales.validate();
  double sum = 0.0;
  for (int l = 0; l < scales.count(); ++l) {
    sum += scales.betas[l] * set_kernel(X, Y, scales.sigmas[l]);
  }
  return sum;
}

GramMatrix gram(std::span<const EmbeddingSet> sets, const ScaleParams& scales) {
  scales.validate();
  const int n = static_cast<int>(sets.size());
  GramMatrix gm;
  gm.values.resize(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const double v = multiscale_kernel(sets[i], sets[j], scales);
      gm.values(i, j) = v;
      gm.values(j, i) = v;
    }
  }
  return gm;
}

MultiscaleGram gram_per_scale(std::span<const EmbeddingSet> sets,
                              const ScaleParams& scales) {
  scales.validate();
  const int n = static_cast<int>(sets.size());
  MultiscaleGram out;
  out.per_scale.assign(scales.count(), Eigen::MatrixXd(n, n));
  for (int l = 0; l < scales.count(); ++l) {
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) {
        const double v = set_kernel(sets[i], sets[j], scales.sigmas[l]);
        out.per_scale[l](i, j) = v;
        out.per_scale[l](j, i) = v;
      }
    }
  }
  out.combined.values = Eigen::MatrixXd::Zero(n, n);
  for (int l = 0; l < scales.count(); ++l) {
    out.combined.values += scales.betas[l] * out.per_scale[l];
  }
  return out;
}

std::vector<double> mean_map_grid(const EmbeddingSet& X, double sigma,
                                  const std::vector<Eigen::VectorXd>& grid) {
  if (X.size() == 0) {
    throw std::invalid_argument("mean_map_grid: empty embedding set");
  }
  check_sigma(sigma);
  const double inv = -1.0 / (2.0 * sigma * sigma);
  std::vector<double> out;
  out.reserve(grid.size());
  for (const auto& point : grid) {
    if (point.size() != X.dim()) {
      throw std::invalid_argument("mean_map_grid: grid dimension mismatch");
    }
    double sum = 0.0;
    for (int v = 0; v < X.size(); ++v) {
      sum += std::exp(inv *
                      (X.vectors.row(v) - point.transpose()).squaredNorm());
    }
    out.push_back(sum);
  }
  return out;
}

std::string mean_map_csv_2d(const EmbeddingSet& X, double sigma, double lo,
                            double hi, int steps) {
  if (X.dim() != 2) {
    throw std::invalid_argument("mean_map_csv_2d: embeddings must be 2-D");
  }
  if (steps < 1) throw std::invalid_argument("mean_map_csv_2d: steps < 1");
  std::vector<Eigen::VectorXd> grid;
  grid.reserve(static_cast<std::size_t>(steps) * steps);
  for (int i = 0; i < steps; ++i) {
    const double x = steps == 1 ? lo : lo + (hi - lo) * i / (steps - 1);
    for (int j = 0; j < steps; ++j) {
      const double y = steps == 1 ? lo : lo + (hi - lo) * j / (steps - 1);
      grid.push_back(Eigen::Vector2d(x, y));
    }
  }
  const std::vector<double> values = mean_map_grid(X, sigma, grid);
  std::string out = "x,y,value\n";
  for (std::size_t g = 0; g < grid.size(); ++g) {
    out += double_to_string(grid[g][0]);
    out += ',';
    out += double_to_string(grid[g][1]);
    out += ',';
    out += double_to_string(values[g]);
    out += '\n';
  }
  return out;
}

}  // namespace gksvm::kernel
