// Command-line interface: dataset stats, single training runs, stratified
// cross-validation with grid search, and mean-map grid evaluation.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "gksvm/checkpoint.hpp"
#include "gksvm/format.hpp"
#include "gksvm/harness.hpp"
#include "gksvm/kernel.hpp"
#include "gksvm/trainer.hpp"
#include "gksvm/tu_io.hpp"

namespace {

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

gksvm::DatasetBundle load_bundle(const std::string& dir,
                                 const std::string& name) {
  std::vector<std::string> warnings;
  gksvm::DatasetBundle bundle =
      gksvm::tu::parse_tu_dataset(dir, name, &warnings);
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
  return bundle;
}

int run_info(const std::string& dir, const std::string& name) {
  const auto bundle = load_bundle(dir, name);
  std::cout << gksvm::tu::stats_csv(name, gksvm::tu::dataset_stats(bundle));
  return 0;
}

int run_train(const std::string& dir, const std::string& name,
              const gksvm::trainer::TrainConfig& config,
              const std::string& checkpoint_path,
              const std::string& curve_path) {
  const auto bundle = load_bundle(dir, name);

  std::string curve = "epoch,objective,train_accuracy\n";
  gksvm::trainer::EpochObserver observer;
  if (!curve_path.empty()) {
    observer = [&curve](const gksvm::trainer::EpochStats& stats,
                        const gksvm::trainer::ModelParams&) {
      curve += std::to_string(stats.epoch);
      curve += ',';
      curve += gksvm::double_to_string(stats.objective);
      curve += ',';
      curve += gksvm::double_to_string(stats.train_accuracy);
      curve += '\n';
    };
  }

  gksvm::trainer::Checkpoint cp;
  cp.config = config;
  cp.alphabet_size = bundle.alphabet_size;
  cp.dataset_dir = dir;
  cp.dataset_name = name;
  cp.params = gksvm::trainer::train(config, bundle.graphs, bundle.class_labels,
                                    bundle.alphabet_size, observer);
  gksvm::trainer::save_checkpoint(checkpoint_path, cp);
  if (!curve_path.empty()) write_file(curve_path, curve);
  std::cerr << "checkpoint written to " << checkpoint_path << "\n";
  return 0;
}

int run_cv_command(const std::string& dir, const std::string& name, int k,
                   const gksvm::trainer::TrainConfig& config,
                   std::uint64_t seed, bool fast, int threads,
                   const std::string& out_path) {
  const auto bundle = load_bundle(dir, name);
  const auto grid =
      fast ? gksvm::cv::HyperGrid::fast() : gksvm::cv::HyperGrid::defaults();
  const auto report =
      gksvm::cv::run_cv(bundle, k, grid, config, seed, threads);
  const std::string csv = gksvm::cv::report_csv(report);
  if (out_path.empty()) {
    std::cout << csv;
  } else {
    write_file(out_path, csv);
    std::cerr << "report written to " << out_path << "\n";
  }
  std::cerr << "mean accuracy " << gksvm::double_to_string(report.mean_accuracy)
            << " +/- " << gksvm::double_to_string(report.std_accuracy) << "\n";
  return 0;
}

int run_meanmap(const std::string& checkpoint_path, int graph_index,
                double sigma, double grid_min, double grid_max, int grid_steps,
                const std::string& out_path) {
  const auto cp = gksvm::trainer::load_checkpoint(checkpoint_path);
  const auto bundle = load_bundle(cp.dataset_dir, cp.dataset_name);
  if (graph_index < 0 || graph_index >= bundle.size()) {
    throw std::runtime_error("graph index out of range");
  }
  const auto set = gksvm::conv::stack_forward(
      bundle.graphs[graph_index], cp.params.stack, bundle.alphabet_size);
  const std::string csv =
      gksvm::kernel::mean_map_csv_2d(set, sigma, grid_min, grid_max, grid_steps);
  if (out_path.empty()) {
    std::cout << csv;
  } else {
    write_file(out_path, csv);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"End-to-end trainable graph-kernel SVM for binary graph "
               "classification"};
  app.require_subcommand(1);

  std::string dir, name;
  gksvm::trainer::TrainConfig config;
  std::uint64_t seed = 0;

  auto* info = app.add_subcommand("info", "Dataset statistics as CSV");
  info->add_option("dir", dir, "dataset directory")->required();
  info->add_option("name", name, "dataset name")->required();

  auto* train = app.add_subcommand("train", "Train on a full dataset");
  std::string checkpoint_path = "model.ckpt.json";
  std::string curve_path;
  train->add_option("dir", dir)->required();
  train->add_option("name", name)->required();
  train->add_option("--lambda", config.lambda, "regularization strength");
  train->add_option("--s", config.scale_count, "number of kernel scales");
  train->add_option("--epochs", config.epochs);
  train->add_option("--lr", config.learning_rate);
  train->add_option("--hidden-dim", config.hidden_dim);
  train->add_option("--seed", seed);
  train->add_option("--checkpoint", checkpoint_path, "output checkpoint file");
  train->add_option("--curve", curve_path, "training-curve CSV file");

  auto* cv = app.add_subcommand("cv", "Stratified k-fold cross-validation");
  int k = 10;
  bool fast = false;
  int threads = 1;
  std::string out_path = "report.csv";
  cv->add_option("dir", dir)->required();
  cv->add_option("name", name)->required();
  cv->add_option("--k", k, "fold count");
  cv->add_option("--seed", seed);
  cv->add_flag("--fast", fast, "single grid point (lambda=0.5, s=2)");
  cv->add_option("--threads", threads, "parallel fold jobs");
  cv->add_option("--epochs", config.epochs);
  cv->add_option("--lr", config.learning_rate);
  cv->add_option("--hidden-dim", config.hidden_dim);
  cv->add_option("--out", out_path, "report CSV file ('' for stdout)");

  auto* meanmap = app.add_subcommand(
      "meanmap", "Mean-map values of one graph on a 2-D grid");
  int graph_index = 0;
  double sigma = 1.0, grid_min = 0.0, grid_max = 1.0;
  int grid_steps = 50;
  std::string mm_checkpoint, mm_out;
  meanmap->add_option("--checkpoint", mm_checkpoint)->required();
  meanmap->add_option("--graph-index", graph_index);
  meanmap->add_option("--sigma", sigma);
  meanmap->add_option("--grid-min", grid_min);
  meanmap->add_option("--grid-max", grid_max);
  meanmap->add_option("--grid-steps", grid_steps);
  meanmap->add_option("--out", mm_out, "grid CSV file ('' for stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (info->parsed()) return run_info(dir, name);
    if (train->parsed()) {
      config.seed = seed;
      return run_train(dir, name, config, checkpoint_path, curve_path);
    }
    if (cv->parsed()) {
      return run_cv_command(dir, name, k, config, seed, fast, threads,
                            out_path);
    }
    if (meanmap->parsed()) {
      return run_meanmap(mm_checkpoint, graph_index, sigma, grid_min, grid_max,
                         grid_steps, mm_out);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
