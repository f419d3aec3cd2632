#include "imbaug/serialize.hpp"

#include <fstream>

namespace imbaug {

using nlohmann::json;

json matrix_to_json(const Matrix& m) {
  json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  std::vector<double> data;
  data.reserve(static_cast<std::size_t>(m.size()));
  for (Index i = 0; i < m.rows(); ++i)
    for (Index c = 0; c < m.cols(); ++c) data.push_back(m(i, c));
  j["data"] = std::move(data);
  return j;
}

Matrix matrix_from_json(const json& j) {
  Matrix m(j.at("rows").get<Index>(), j.at("cols").get<Index>());
  const auto data = j.at("data").get<std::vector<double>>();
  if (static_cast<Index>(data.size()) != m.size())
    throw std::runtime_error("matrix json: size mismatch");
  std::size_t k = 0;
  for (Index i = 0; i < m.rows(); ++i)
    for (Index c = 0; c < m.cols(); ++c) m(i, c) = data[k++];
  return m;
}

namespace {

json vector_to_json(const Vector& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

Vector vector_from_json(const json& j) {
  const auto data = j.get<std::vector<double>>();
  return Eigen::Map<const Vector>(data.data(), static_cast<Index>(data.size()));
}

json config_to_json(const TrainConfig& cfg) {
  return {{"learning_rate", cfg.learning_rate}, {"epochs", cfg.epochs},
          {"batch_size", cfg.batch_size},       {"l2", cfg.l2},
          {"seed", cfg.seed},                   {"tolerance", cfg.tolerance}};
}

TrainConfig config_from_json(const json& j) {
  TrainConfig cfg;
  cfg.learning_rate = j.at("learning_rate").get<double>();
  cfg.epochs = j.at("epochs").get<int>();
  cfg.batch_size = j.at("batch_size").get<int>();
  cfg.l2 = j.at("l2").get<double>();
  cfg.seed = j.at("seed").get<std::uint64_t>();
  cfg.tolerance = j.at("tolerance").get<double>();
  return cfg;
}

} // namespace

json to_json(const LinearModel& model) {
  return {{"type", "logreg"},
          {"weights", vector_to_json(model.weights)},
          {"bias", model.bias},
          {"l2", model.l2},
          {"converged", model.converged},
          {"epochs_run", model.epochs_run}};
}

LinearModel linear_from_json(const json& j) {
  if (j.at("type") != "logreg") throw std::runtime_error("not a logreg snapshot");
  LinearModel m;
  m.weights = vector_from_json(j.at("weights"));
  m.bias = j.at("bias").get<double>();
  m.l2 = j.at("l2").get<double>();
  m.converged = j.at("converged").get<bool>();
  m.epochs_run = j.at("epochs_run").get<int>();
  return m;
}

json to_json(const SvmModel& model) {
  return {{"type", "svm"},
          {"support_ids", model.support_ids},
          {"support_rows", model.support_rows},
          {"support_labels", model.support_labels},
          {"dual_coefs", vector_to_json(model.dual_coefs)},
          {"bias", model.bias},
          {"kernel", model.kernel.type == KernelSpec::Type::rbf ? "rbf" : "linear"},
          {"gamma", model.kernel.gamma},
          {"C", model.C},
          {"support_vectors", matrix_to_json(model.support_vectors)},
          {"converged", model.converged},
          {"iterations", model.iterations}};
}

SvmModel svm_from_json(const json& j) {
  if (j.at("type") != "svm") throw std::runtime_error("not an svm snapshot");
  SvmModel m;
  m.support_ids = j.at("support_ids").get<std::vector<std::int64_t>>();
  m.support_rows = j.at("support_rows").get<std::vector<Index>>();
  m.support_labels = j.at("support_labels").get<std::vector<int>>();
  m.dual_coefs = vector_from_json(j.at("dual_coefs"));
  m.bias = j.at("bias").get<double>();
  m.kernel.type = j.at("kernel") == "rbf" ? KernelSpec::Type::rbf
                                          : KernelSpec::Type::linear;
  m.kernel.gamma = j.at("gamma").get<double>();
  m.C = j.at("C").get<double>();
  m.support_vectors = matrix_from_json(j.at("support_vectors"));
  m.converged = j.at("converged").get<bool>();
  m.iterations = j.at("iterations").get<int>();
  return m;
}

json to_json(const MlpModel& model) {
  json layers = json::array();
  for (std::size_t l = 0; l < model.weights.size(); ++l)
    layers.push_back({{"weights", matrix_to_json(model.weights[l])},
                      {"biases", vector_to_json(model.biases[l])}});
  return {{"type", "mlp"}, {"layers", std::move(layers)},
          {"config", config_to_json(model.config)}};
}

MlpModel mlp_from_json(const json& j) {
  if (j.at("type") != "mlp") throw std::runtime_error("not an mlp snapshot");
  MlpModel m;
  for (const auto& layer : j.at("layers")) {
    m.weights.push_back(matrix_from_json(layer.at("weights")));
    m.biases.push_back(vector_from_json(layer.at("biases")));
  }
  m.config = config_from_json(j.at("config"));
  return m;
}

void save_model(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << j.dump(2) << "\n";
}

json load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  return json::parse(in);
}

} // namespace imbaug
