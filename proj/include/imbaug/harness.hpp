#pragma once

#include "imbaug/dataset.hpp"
#include "imbaug/types.hpp"

#include <json.hpp>

namespace imbaug {

struct FixtureSpec {
  Index n_major = 1000;
  Index n_minor = 100;
  Index d = 10;
  double separation = 3.0;
};

struct ExperimentConfig {
  std::string dataset_path;      // empty -> use the Gaussian fixture
  std::string label_col = "label";
  FixtureSpec fixture;

  std::vector<std::string> methods{"base"};
  std::vector<std::string> models{"logreg"};
  int repeats = 5;
  double train_fraction = 0.7;
  std::uint64_t seed = 1;

  Index k_neighbors = 5;
  double remix_alpha = 0.2;
  double svm_c = 1.0;
  std::string kernel = "rbf";
  double gamma = 0.0; // <= 0 -> 1/(d * mean feature variance)
  double lr = 0.5;
  int epochs = 2000;
  double l2 = 1e-2;
  int batch_size = 32;
  double mlp_lr = 0.05;
  int mlp_epochs = 60;
  int topk = 10;
  double grad_fraction = 0.1;

  std::string out_dir = "out";

  void validate() const;
  static ExperimentConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

struct CellResult {
  std::string method;
  std::string model;
  int repeat = 0;
  double bac = 0.0;
  double macro_f1 = 0.0;
  bool converged = true;
  double wall_clock_s = 0.0; // console only, never written to report files
  nlohmann::json diagnostics;
};

/// Runs the full protocol: split -> scale -> augment -> train -> evaluate
/// -> diagnose, with the base model of each repeat shared by every method
/// on that repeat. Deterministic under cfg.seed.
std::vector<CellResult> run_experiment(const ExperimentConfig& cfg,
                                       const Dataset& data);
std::vector<CellResult> run_experiment(const ExperimentConfig& cfg);

/// Per-cell JSON, an aggregate CSV over repeats, and per-feature magnitude
/// CSVs for external plotting.
void emit_reports(const ExperimentConfig& cfg,
                  const std::vector<CellResult>& results);

Dataset load_or_generate(const ExperimentConfig& cfg);

} // namespace imbaug
