#include "gksvm/checkpoint.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace gksvm::trainer {
namespace {

using nlohmann::json;

std::string to_hex(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%a", v);
  return buf;
}

double from_hex(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size()) {
    throw std::runtime_error("checkpoint: bad float '" + s + "'");
  }
  return v;
}

json encode_vector(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_hex(v[i]));
  return out;
}

Eigen::VectorXd decode_vector(const json& j) {
  Eigen::VectorXd v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    v[static_cast<Eigen::Index>(i)] = from_hex(j[i].get<std::string>());
  }
  return v;
}

json encode_matrix(const Eigen::MatrixXd& m) {
  json out;
  out["rows"] = m.rows();
  out["cols"] = m.cols();
  json data = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) data.push_back(to_hex(m(i, j)));
  }
  out["data"] = data;
  return out;
}

Eigen::MatrixXd decode_matrix(const json& j) {
  const Eigen::Index rows = j.at("rows").get<Eigen::Index>();
  const Eigen::Index cols = j.at("cols").get<Eigen::Index>();
  const json& data = j.at("data");
  if (static_cast<Eigen::Index>(data.size()) != rows * cols) {
    throw std::runtime_error("checkpoint: matrix size mismatch");
  }
  Eigen::MatrixXd m(rows, cols);
  std::size_t k = 0;
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      m(i, c) = from_hex(data[k++].get<std::string>());
    }
  }
  return m;
}

constexpr const char* kFormatTag = "gksvm-checkpoint-v1";

}  // namespace

void save_checkpoint(const std::filesystem::path& path, const Checkpoint& cp) {
  json j;
  j["format"] = kFormatTag;
  j["config"] = {
      {"epochs", cp.config.epochs},
      {"learning_rate", to_hex(cp.config.learning_rate)},
      {"lambda", to_hex(cp.config.lambda)},
      {"scale_count", cp.config.scale_count},
      {"hidden_dim", cp.config.hidden_dim},
      {"seed", cp.config.seed},
      {"conv_layers", cp.config.conv_layers},
  };
  j["alphabet_size"] = cp.alphabet_size;
  j["dataset"] = {{"dir", cp.dataset_dir}, {"name", cp.dataset_name}};
  json layers = json::array();
  for (const auto& layer : cp.params.stack.layers) {
    layers.push_back({{"weight", encode_matrix(layer.weight)},
                      {"bias", encode_vector(layer.bias)}});
  }
  j["stack"] = layers;
  j["sigmas"] = encode_vector(cp.params.scales.sigmas);
  j["betas"] = encode_vector(cp.params.scales.betas);
  j["alpha"] = encode_vector(cp.params.svm.alpha);
  j["svm_lambda"] = to_hex(cp.params.svm.lambda);

  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << j.dump(1) << "\n";
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  json j;
  in >> j;
  if (j.value("format", "") != kFormatTag) {
    throw std::runtime_error("not a gksvm checkpoint: " + path.string());
  }

  Checkpoint cp;
  const json& c = j.at("config");
  cp.config.epochs = c.at("epochs").get<int>();
  cp.config.learning_rate = from_hex(c.at("learning_rate").get<std::string>());
  cp.config.lambda = from_hex(c.at("lambda").get<std::string>());
  cp.config.scale_count = c.at("scale_count").get<int>();
  cp.config.hidden_dim = c.at("hidden_dim").get<int>();
  cp.config.seed = c.at("seed").get<std::uint64_t>();
  cp.config.conv_layers = c.at("conv_layers").get<int>();
  cp.alphabet_size = j.at("alphabet_size").get<int>();
  cp.dataset_dir = j.at("dataset").at("dir").get<std::string>();
  cp.dataset_name = j.at("dataset").at("name").get<std::string>();
  for (const json& layer : j.at("stack")) {
    conv::ConvLayerParams lp;
    lp.weight = decode_matrix(layer.at("weight"));
    lp.bias = decode_vector(layer.at("bias"));
    cp.params.stack.layers.push_back(std::move(lp));
  }
  cp.params.scales.sigmas = decode_vector(j.at("sigmas"));
  cp.params.scales.betas = decode_vector(j.at("betas"));
  cp.params.svm.alpha = decode_vector(j.at("alpha"));
  cp.params.svm.lambda = from_hex(j.at("svm_lambda").get<std::string>());
  return cp;
}

}  // namespace gksvm::trainer
