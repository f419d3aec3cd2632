#include "imbaug/dataset.hpp"
#include "imbaug/diagnostics.hpp"
#include "imbaug/harness.hpp"
#include "imbaug/resampling.hpp"
#include "imbaug/serialize.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>

namespace {

using namespace imbaug;
using nlohmann::json;

int cmd_run(const std::string& config_path, const json& overrides) {
  json j;
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) throw std::invalid_argument("cannot open config: " + config_path);
    j = json::parse(in);
  }
  for (const auto& [key, value] : overrides.items()) j[key] = value;
  const ExperimentConfig cfg = ExperimentConfig::from_json(j);
  cfg.validate();

  const auto results = run_experiment(cfg);
  emit_reports(cfg, results);

  std::cout << "method      model    repeat  BAC      macroF1  conv  secs\n";
  for (const auto& cell : results) {
    std::printf("%-11s %-8s %-7d %-8.4f %-8.4f %-5s %.2f\n",
                cell.method.c_str(), cell.model.c_str(), cell.repeat, cell.bac,
                cell.macro_f1, cell.converged ? "yes" : "no",
                cell.wall_clock_s);
  }
  std::cout << "reports written to " << cfg.out_dir << "\n";
  return 0;
}

int cmd_augment(const std::string& data_path, const std::string& label_col,
                const std::string& method, Index k, double alpha,
                std::uint64_t seed, const std::string& out_path) {
  const Dataset data = load_csv(data_path, label_col).data;
  AugmentedDataset aug;
  if (method == "ros")
    aug = ros(data, seed);
  else if (method == "smote")
    aug = smote(data, k, seed);
  else if (method == "adasyn")
    aug = adasyn(data, k, seed);
  else if (method == "remix")
    aug = remix(data, alpha, seed);
  else
    throw std::invalid_argument("augment: unsupported method '" + method + "'");

  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot write file: " + out_path);
  out.precision(17);
  for (Index jf = 0; jf < aug.data.dims(); ++jf) out << "f" << jf << ",";
  out << "label,instance_id,origin,parent_a,parent_b,lambda";
  if (aug.soft_labels)
    for (int c = 0; c < aug.data.n_classes; ++c) out << ",soft" << c;
  out << "\n";
  for (Index i = 0; i < aug.data.rows(); ++i) {
    for (Index jf = 0; jf < aug.data.dims(); ++jf)
      out << aug.data.features(i, jf) << ",";
    const auto& p = aug.provenance[static_cast<std::size_t>(i)];
    out << aug.data.labels[static_cast<std::size_t>(i)] << ","
        << aug.data.instance_ids[static_cast<std::size_t>(i)] << ","
        << (p.origin == Origin::natural ? "natural" : "synthetic") << ","
        << p.parent_a << ",";
    if (p.parent_b) out << *p.parent_b;
    out << ",";
    if (p.lambda) out << *p.lambda;
    if (aug.soft_labels)
      for (int c = 0; c < aug.data.n_classes; ++c)
        out << "," << (*aug.soft_labels)(i, c);
    out << "\n";
  }
  std::cout << "wrote " << aug.data.rows() << " rows to " << out_path << "\n";
  return 0;
}

int cmd_diagnose(const std::string& base_path, const std::string& other_path) {
  const json jb = load_model(base_path);
  const json jo = load_model(other_path);
  const std::string type = jb.at("type");
  if (jo.at("type") != type)
    throw std::invalid_argument("diagnose: model types differ");

  if (type == "logreg") {
    const auto base = linear_from_json(jb);
    const auto other = linear_from_json(jo);
    const Matrix wb = base.weights.transpose();
    const Matrix wo = other.weights.transpose();
    const auto diff = weight_diff_pct(wb, wo);
    std::cout << "frobenius_norm base:  " << frobenius_norm(wb) << "\n"
              << "frobenius_norm other: " << frobenius_norm(wo) << "\n"
              << "weight_diff_pct: " << diff.mean_pct
              << " (excluded near-zero entries: " << diff.excluded << ")\n";
  } else if (type == "mlp") {
    const auto base = mlp_from_json(jb);
    const auto other = mlp_from_json(jo);
    const auto diff = weight_diff_pct(base.weights, other.weights);
    double fb = frobenius_norm(base.weights);
    double fo = frobenius_norm(other.weights);
    std::cout << "frobenius_norm base:  " << fb << "\n"
              << "frobenius_norm other: " << fo << "\n"
              << "weight_diff_pct: " << diff.mean_pct
              << " (excluded near-zero entries: " << diff.excluded << ")\n";
  } else if (type == "svm") {
    const auto base = svm_from_json(jb);
    const auto other = svm_from_json(jo);
    std::cout << "support vectors base:  " << base.support_ids.size() << "\n"
              << "support vectors other: " << other.support_ids.size() << "\n"
              << "sv_multiple: "
              << (base.support_ids.empty()
                      ? 0.0
                      : static_cast<double>(other.support_ids.size()) /
                            static_cast<double>(base.support_ids.size()))
              << "\n";
  } else {
    throw std::invalid_argument("diagnose: unknown model type '" + type + "'");
  }
  return 0;
}

int cmd_gen(Index n_major, Index n_minor, Index d, double separation,
            std::uint64_t seed, const std::string& out_path) {
  const Dataset data =
      make_gaussian_imbalanced(n_major, n_minor, d, separation, seed);
  write_csv(out_path, data);
  std::cout << "wrote " << data.rows() << " rows (imbalance ratio "
            << imbalance_ratio(data) << ") to " << out_path << "\n";
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Imbalanced-data augmentation study harness"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "Run a full experiment from a config");
  std::string config_path;
  run->add_option("--config", config_path, "JSON config file");
  json overrides = json::object();
  std::string o_dataset, o_label_col, o_kernel, o_out_dir;
  std::vector<std::string> o_methods, o_models;
  int o_repeats = -1, o_epochs = -1, o_topk = -1;
  double o_frac = -1, o_alpha = -1, o_c = -1, o_gamma = -1e300, o_lr = -1,
         o_l2 = -1;
  std::int64_t o_seed = -1, o_k = -1;
  run->add_option("--dataset", o_dataset, "CSV path (empty: Gaussian fixture)");
  run->add_option("--label-col", o_label_col, "Label column name or index");
  run->add_option("--method", o_methods, "Methods to run");
  run->add_option("--model", o_models, "Models to train");
  run->add_option("--repeats", o_repeats);
  run->add_option("--train-fraction", o_frac);
  run->add_option("--seed", o_seed);
  run->add_option("--k-neighbors", o_k);
  run->add_option("--remix-alpha", o_alpha);
  run->add_option("--svm-c", o_c);
  run->add_option("--kernel", o_kernel, "linear or rbf");
  run->add_option("--gamma", o_gamma);
  run->add_option("--epochs", o_epochs);
  run->add_option("--lr", o_lr);
  run->add_option("--l2", o_l2);
  run->add_option("--topk", o_topk);
  run->add_option("--out-dir", o_out_dir);

  // augment
  auto* aug = app.add_subcommand("augment",
                                 "Emit an augmented CSV with provenance");
  std::string a_data, a_label = "label", a_method = "smote", a_out = "aug.csv";
  std::uint64_t a_seed = 1;
  Index a_k = 5;
  double a_alpha = 0.2;
  aug->add_option("--data", a_data, "Input CSV")->required();
  aug->add_option("--label-col", a_label);
  aug->add_option("--method", a_method, "ros|smote|adasyn|remix");
  aug->add_option("--k-neighbors", a_k);
  aug->add_option("--remix-alpha", a_alpha);
  aug->add_option("--seed", a_seed);
  aug->add_option("--out", a_out);

  // diagnose
  auto* diag = app.add_subcommand("diagnose", "Compare two model snapshots");
  std::string d_base, d_other;
  diag->add_option("--base", d_base, "Base model JSON")->required();
  diag->add_option("--other", d_other, "Comparison model JSON")->required();

  // gen
  auto* gen = app.add_subcommand("gen", "Emit a Gaussian fixture CSV");
  Index g_major = 1000, g_minor = 100, g_d = 10;
  double g_sep = 3.0;
  std::uint64_t g_seed = 1;
  std::string g_out = "fixture.csv";
  gen->add_option("--n-major", g_major);
  gen->add_option("--n-minor", g_minor);
  gen->add_option("--d", g_d);
  gen->add_option("--separation", g_sep);
  gen->add_option("--seed", g_seed);
  gen->add_option("--out", g_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (run->parsed()) {
      if (run->count("--dataset")) overrides["dataset"] = o_dataset;
      if (run->count("--label-col")) overrides["label_col"] = o_label_col;
      if (run->count("--method")) overrides["methods"] = o_methods;
      if (run->count("--model")) overrides["models"] = o_models;
      if (run->count("--repeats")) overrides["repeats"] = o_repeats;
      if (run->count("--train-fraction")) overrides["train_fraction"] = o_frac;
      if (run->count("--seed")) overrides["seed"] = o_seed;
      if (run->count("--k-neighbors")) overrides["k_neighbors"] = o_k;
      if (run->count("--remix-alpha")) overrides["remix_alpha"] = o_alpha;
      if (run->count("--svm-c")) overrides["svm_c"] = o_c;
      if (run->count("--kernel")) overrides["kernel"] = o_kernel;
      if (run->count("--gamma")) overrides["gamma"] = o_gamma;
      if (run->count("--epochs")) overrides["epochs"] = o_epochs;
      if (run->count("--lr")) overrides["lr"] = o_lr;
      if (run->count("--l2")) overrides["l2"] = o_l2;
      if (run->count("--topk")) overrides["topk"] = o_topk;
      if (run->count("--out-dir")) overrides["out_dir"] = o_out_dir;
      return cmd_run(config_path, overrides);
    }
    if (aug->parsed())
      return cmd_augment(a_data, a_label, a_method, a_k, a_alpha, a_seed, a_out);
    if (diag->parsed()) return cmd_diagnose(d_base, d_other);
    if (gen->parsed()) return cmd_gen(g_major, g_minor, g_d, g_sep, g_seed, g_out);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
