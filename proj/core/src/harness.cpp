#include "gksvm/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "gksvm/format.hpp"
#include "gksvm/rng.hpp"

namespace gksvm::cv {

HyperGrid HyperGrid::defaults() {
  return {{0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0}, {1, 2}};
}

HyperGrid HyperGrid::fast() { return {{0.5}, {2}}; }

std::pair<double, int> HyperGrid::point(int index) const {
  const int sc = static_cast<int>(scale_counts.size());
  return {lambdas[index / sc], scale_counts[index % sc]};
}

void HyperGrid::validate() const {
  if (lambdas.empty() || scale_counts.empty()) {
    throw std::invalid_argument("grid: empty");
  }
  for (double l : lambdas) {
    if (!(l >= 0.0)) throw std::invalid_argument("grid: negative lambda");
  }
  for (int s : scale_counts) {
    if (s < 1) throw std::invalid_argument("grid: scale count < 1");
  }
}

double accuracy(const std::vector<int>& predictions,
                const std::vector<int>& truth) {
  if (predictions.empty() || predictions.size() != truth.size()) {
    throw std::invalid_argument("accuracy: empty or mismatched inputs");
  }
  int correct = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (predictions[i] == truth[i]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(truth.size());
}

namespace {

struct Subset {
  std::vector<LabeledGraph> graphs;
  std::vector<int> labels;
};

Subset take(const DatasetBundle& bundle, const std::vector<int>& indices) {
  Subset out;
  out.graphs.reserve(indices.size());
  out.labels.reserve(indices.size());
  for (int i : indices) {
    out.graphs.push_back(bundle.graphs[i]);
    out.labels.push_back(bundle.class_labels[i]);
  }
  return out;
}

std::vector<conv::EmbeddingSet> embed_all(
    const trainer::ModelParams& params, const std::vector<LabeledGraph>& graphs,
    int alphabet_size) {
  std::vector<conv::EmbeddingSet> sets;
  sets.reserve(graphs.size());
  for (const auto& g : graphs) {
    sets.push_back(conv::stack_forward(g, params.stack, alphabet_size));
  }
  return sets;
}

double train_and_score(const trainer::TrainConfig& config,
                       const Subset& train, const Subset& eval,
                       int alphabet_size) {
  const trainer::ModelParams model = trainer::train(
      config, train.graphs, train.labels, alphabet_size);
  const auto train_sets = embed_all(model, train.graphs, alphabet_size);
  const auto predictions =
      trainer::predict_graphs(model, train_sets, eval.graphs);
  return accuracy(predictions, eval.labels);
}

}  // namespace

FoldRecord run_fold(const DatasetBundle& bundle, const FoldAssignment& folds,
                    int fold_index, const HyperGrid& grid,
                    const trainer::TrainConfig& config, std::uint64_t seed) {
  grid.validate();
  if (fold_index < 0 || fold_index >= folds.k) {
    throw std::invalid_argument("run_fold: fold index out of range");
  }
  const int val_fold = folds.validation_fold_of[fold_index];
  std::vector<int> train_idx, val_idx, test_idx;
  for (std::size_t i = 0; i < folds.test_fold_of.size(); ++i) {
    const int f = folds.test_fold_of[i];
    if (f == fold_index) {
      test_idx.push_back(static_cast<int>(i));
    } else if (f == val_fold) {
      val_idx.push_back(static_cast<int>(i));
    } else {
      train_idx.push_back(static_cast<int>(i));
    }
  }
  const Subset train = take(bundle, train_idx);
  const Subset val = take(bundle, val_idx);
  const Subset test = take(bundle, test_idx);

  double best_acc = -1.0;
  double best_lambda = 0.0;
  int best_s = 0;
  for (int gi = 0; gi < grid.size(); ++gi) {
    const auto [lambda, s] = grid.point(gi);
    trainer::TrainConfig cfg = config;
    cfg.lambda = lambda;
    cfg.scale_count = s;
    cfg.seed = derive_seed(seed, static_cast<std::uint64_t>(fold_index),
                           static_cast<std::uint64_t>(gi));
    const double acc = train_and_score(cfg, train, val, bundle.alphabet_size);
    const bool better =
        acc > best_acc ||
        (acc == best_acc &&
         (lambda < best_lambda || (lambda == best_lambda && s < best_s)));
    if (better) {
      best_acc = acc;
      best_lambda = lambda;
      best_s = s;
    }
  }

  // Final model: all non-test data (training plus validation folds).
  std::vector<int> non_test_idx = train_idx;
  non_test_idx.insert(non_test_idx.end(), val_idx.begin(), val_idx.end());
  std::sort(non_test_idx.begin(), non_test_idx.end());
  const Subset non_test = take(bundle, non_test_idx);

  trainer::TrainConfig cfg = config;
  cfg.lambda = best_lambda;
  cfg.scale_count = best_s;
  cfg.seed = derive_seed(seed, static_cast<std::uint64_t>(fold_index),
                         static_cast<std::uint64_t>(grid.size()));
  const double test_acc =
      train_and_score(cfg, non_test, test, bundle.alphabet_size);
  return {fold_index, best_lambda, best_s, test_acc};
}

CvReport run_cv(const DatasetBundle& bundle, int k, const HyperGrid& grid,
                const trainer::TrainConfig& config, std::uint64_t seed,
                int threads) {
  bundle.validate();
  grid.validate();
  const FoldAssignment folds = stratified_folds(bundle.class_labels, k, seed);

  CvReport report;
  report.per_fold.resize(k);
  threads = std::max(1, std::min(threads, k));
  if (threads == 1) {
    for (int f = 0; f < k; ++f) {
      report.per_fold[f] = run_fold(bundle, folds, f, grid, config, seed);
    }
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (int f = next.fetch_add(1); f < k; f = next.fetch_add(1)) {
          report.per_fold[f] = run_fold(bundle, folds, f, grid, config, seed);
        }
      });
    }
    for (auto& th : pool) th.join();
  }

  double mean = 0.0;
  for (const auto& rec : report.per_fold) mean += rec.test_accuracy;
  mean /= k;
  double var = 0.0;
  for (const auto& rec : report.per_fold) {
    var += (rec.test_accuracy - mean) * (rec.test_accuracy - mean);
  }
  report.mean_accuracy = mean;
  report.std_accuracy = std::sqrt(var / k);
  return report;
}

std::string report_csv(const CvReport& report) {
  std::string out = "fold,lambda,s,test_accuracy\n";
  for (const auto& rec : report.per_fold) {
    out += std::to_string(rec.fold);
    out += ',';
    out += double_to_string(rec.lambda);
    out += ',';
    out += std::to_string(rec.s);
    out += ',';
    out += double_to_string(rec.test_accuracy);
    out += '\n';
  }
  out += "mean,";
  out += double_to_string(report.mean_accuracy);
  out += ",std,";
  out += double_to_string(report.std_accuracy);
  out += '\n';
  return out;
}

CvReport parse_report_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "fold,lambda,s,test_accuracy") {
    throw std::runtime_error("report: bad header");
  }
  CvReport report;
  bool have_summary = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(std::move(line));
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(row, cell, ',')) cells.push_back(cell);
    if (cells.size() == 4 && cells[0] == "mean") {
      if (cells[2] != "std") throw std::runtime_error("report: bad summary");
      report.mean_accuracy = std::stod(cells[1]);
      report.std_accuracy = std::stod(cells[3]);
      have_summary = true;
    } else if (cells.size() == 4) {
      FoldRecord rec;
      rec.fold = std::stoi(cells[0]);
      rec.lambda = std::stod(cells[1]);
      rec.s = std::stoi(cells[2]);
      rec.test_accuracy = std::stod(cells[3]);
      report.per_fold.push_back(rec);
    } else {
      throw std::runtime_error("report: bad row");
    }
  }
  if (!have_summary) throw std::runtime_error("report: missing summary row");
  return report;
}

}  // namespace gksvm::cv
