#pragma once

#include <filesystem>
#include <string>

#include "gksvm/trainer.hpp"

namespace gksvm::trainer {

/// A trained model plus everything needed to reproduce or reuse it:
/// the config (including seed), the label alphabet size, and the dataset
/// the model was trained on (so `meanmap` can re-embed its graphs).
struct Checkpoint {
  TrainConfig config;
  int alphabet_size = 0;
  std::string dataset_dir;
  std::string dataset_name;
  ModelParams params;
};

/// JSON file with every double stored as a hexfloat string, so a
/// save/load cycle reproduces the model bit for bit.
void save_checkpoint(const std::filesystem::path& path, const Checkpoint& cp);
Checkpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace gksvm::trainer
