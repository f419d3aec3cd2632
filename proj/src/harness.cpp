#include "imbaug/harness.hpp"

#include "imbaug/diagnostics.hpp"
#include "imbaug/latent_aug.hpp"
#include "imbaug/logreg.hpp"
#include "imbaug/metrics.hpp"
#include "imbaug/mlp.hpp"
#include "imbaug/resampling.hpp"
#include "imbaug/serialize.hpp"
#include "imbaug/svm.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>

namespace imbaug {

using nlohmann::json;

namespace {

const std::set<std::string> kMethods = {"base",   "ros",    "cs",  "smote",
                                        "adasyn", "remix",  "dsm", "eos"};
const std::set<std::string> kModels = {"logreg", "svm", "mlp"};
const std::set<std::string> kLatentMethods = {"dsm", "eos"};

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::uint64_t cell_seed(std::uint64_t base, int repeat, const std::string& method,
                        const std::string& model) {
  std::uint64_t h = base;
  h = splitmix64(h ^ static_cast<std::uint64_t>(repeat + 1));
  for (char c : method) h = splitmix64(h ^ static_cast<std::uint64_t>(c));
  for (char c : model) h = splitmix64(h ^ static_cast<std::uint64_t>(c));
  return h;
}

struct Fold {
  Dataset train; // standardized
  Dataset test;  // standardized with the train scaler
};

json vector_json(const Vector& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

json topk_sets_json(const TopKReport& r) {
  json sets = json::array();
  for (const auto& s : r.top_sets) sets.push_back(s);
  return sets;
}

json magnitudes_json(const TopKReport& r) {
  json mags = json::array();
  for (const auto& m : r.magnitudes) mags.push_back(vector_json(m));
  return mags;
}

json census_json(const SvCensus& c) {
  return {{"sv_count_per_class", c.sv_count_per_class},
          {"sv_multiple_vs_base", c.sv_multiple_vs_base},
          {"class_ratio_maj_min", c.class_ratio_maj_min},
          {"dual_sum_per_class", c.dual_sum_per_class},
          {"new_sv_ratio", c.new_sv_ratio},
          {"synthetic_sv_ratio", c.synthetic_sv_ratio}};
}

} // namespace

void ExperimentConfig::validate() const {
  if (methods.empty() || models.empty())
    throw std::invalid_argument("config: methods and models must be non-empty");
  for (const auto& m : methods)
    if (!kMethods.count(m))
      throw std::invalid_argument("config: unknown method '" + m + "'");
  for (const auto& m : models)
    if (!kModels.count(m))
      throw std::invalid_argument("config: unknown model '" + m + "'");
  const bool has_latent = std::any_of(methods.begin(), methods.end(),
                                      [](const auto& m) { return kLatentMethods.count(m) > 0; });
  const bool has_mlp = std::count(models.begin(), models.end(), "mlp") > 0;
  if (has_latent && !has_mlp)
    throw std::invalid_argument(
        "config: dsm/eos operate in a network's latent space and require the "
        "mlp model");
  if (repeats < 1) throw std::invalid_argument("config: repeats must be >= 1");
  if (train_fraction <= 0.0 || train_fraction >= 1.0)
    throw std::invalid_argument("config: train_fraction must be in (0,1)");
  if (kernel != "rbf" && kernel != "linear")
    throw std::invalid_argument("config: kernel must be rbf or linear");
  if (topk < 1) throw std::invalid_argument("config: topk must be >= 1");
}

ExperimentConfig ExperimentConfig::from_json(const json& j) {
  ExperimentConfig cfg;
  auto get = [&](const char* key, auto& field) {
    if (j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
  };
  get("dataset", cfg.dataset_path);
  get("label_col", cfg.label_col);
  if (j.contains("fixture")) {
    const auto& f = j.at("fixture");
    if (f.contains("n_major")) cfg.fixture.n_major = f.at("n_major").get<Index>();
    if (f.contains("n_minor")) cfg.fixture.n_minor = f.at("n_minor").get<Index>();
    if (f.contains("d")) cfg.fixture.d = f.at("d").get<Index>();
    if (f.contains("separation"))
      cfg.fixture.separation = f.at("separation").get<double>();
  }
  get("methods", cfg.methods);
  get("models", cfg.models);
  get("repeats", cfg.repeats);
  get("train_fraction", cfg.train_fraction);
  get("seed", cfg.seed);
  get("k_neighbors", cfg.k_neighbors);
  get("remix_alpha", cfg.remix_alpha);
  get("svm_c", cfg.svm_c);
  get("kernel", cfg.kernel);
  get("gamma", cfg.gamma);
  get("lr", cfg.lr);
  get("epochs", cfg.epochs);
  get("l2", cfg.l2);
  get("batch_size", cfg.batch_size);
  get("mlp_lr", cfg.mlp_lr);
  get("mlp_epochs", cfg.mlp_epochs);
  get("topk", cfg.topk);
  get("grad_fraction", cfg.grad_fraction);
  get("out_dir", cfg.out_dir);
  return cfg;
}

json ExperimentConfig::to_json() const {
  return {{"dataset", dataset_path},
          {"label_col", label_col},
          {"fixture",
           {{"n_major", fixture.n_major},
            {"n_minor", fixture.n_minor},
            {"d", fixture.d},
            {"separation", fixture.separation}}},
          {"methods", methods},
          {"models", models},
          {"repeats", repeats},
          {"train_fraction", train_fraction},
          {"seed", seed},
          {"k_neighbors", k_neighbors},
          {"remix_alpha", remix_alpha},
          {"svm_c", svm_c},
          {"kernel", kernel},
          {"gamma", gamma},
          {"lr", lr},
          {"epochs", epochs},
          {"l2", l2},
          {"batch_size", batch_size},
          {"mlp_lr", mlp_lr},
          {"mlp_epochs", mlp_epochs},
          {"topk", topk},
          {"grad_fraction", grad_fraction},
          {"out_dir", out_dir}};
}

Dataset load_or_generate(const ExperimentConfig& cfg) {
  if (!cfg.dataset_path.empty())
    return load_csv(cfg.dataset_path, cfg.label_col).data;
  return make_gaussian_imbalanced(cfg.fixture.n_major, cfg.fixture.n_minor,
                                  cfg.fixture.d, cfg.fixture.separation,
                                  cfg.seed);
}

namespace {

KernelSpec kernel_from_cfg(const ExperimentConfig& cfg) {
  KernelSpec k;
  k.type = cfg.kernel == "rbf" ? KernelSpec::Type::rbf : KernelSpec::Type::linear;
  k.gamma = cfg.gamma;
  return k;
}

TrainConfig lg_cfg(const ExperimentConfig& cfg, std::uint64_t seed) {
  TrainConfig t;
  t.learning_rate = cfg.lr;
  t.epochs = cfg.epochs;
  t.l2 = cfg.l2;
  t.batch_size = cfg.batch_size;
  t.seed = seed;
  return t;
}

TrainConfig mlp_cfg(const ExperimentConfig& cfg, std::uint64_t seed) {
  TrainConfig t;
  t.learning_rate = cfg.mlp_lr;
  t.epochs = cfg.mlp_epochs;
  t.l2 = cfg.l2;
  t.batch_size = cfg.batch_size;
  t.seed = seed;
  return t;
}

/// Input-space augmentation dispatch. "base" and "cs" leave the data as-is.
AugmentedDataset augment_input(const std::string& method, const Dataset& train,
                               const ExperimentConfig& cfg, std::uint64_t seed) {
  if (method == "ros") return ros(train, seed);
  if (method == "smote") return smote(train, cfg.k_neighbors, seed);
  if (method == "adasyn") return adasyn(train, cfg.k_neighbors, seed);
  if (method == "remix") return remix(train, cfg.remix_alpha, seed);
  AugmentedDataset out;
  out.data = train;
  for (std::int64_t id : train.instance_ids)
    out.provenance.push_back({Origin::natural, id, std::nullopt, std::nullopt});
  return out;
}

struct BaseModels {
  std::optional<LinearModel> logreg;
  std::optional<SvmModel> svm;
  std::optional<MlpModel> mlp;
  std::optional<TopKReport> logreg_topk;
  std::optional<TopKReport> mlp_topk_inst;
  std::optional<TopKReport> mlp_topk_agg;
};

std::vector<Matrix> mlp_stack(const MlpModel& m) {
  std::vector<Matrix> stack = m.weights;
  for (const auto& b : m.biases) stack.push_back(b);
  return stack;
}

} // namespace

std::vector<CellResult> run_experiment(const ExperimentConfig& cfg,
                                       const Dataset& data) {
  cfg.validate();
  data.validate();
  if (data.n_classes != 2)
    throw std::invalid_argument(
        "run_experiment: the classifier suite is binary; dataset has " +
        std::to_string(data.n_classes) + " classes");

  const auto plan =
      stratified_splits(data, cfg.repeats, cfg.train_fraction, cfg.seed);
  std::vector<CellResult> results;

  for (int r = 0; r < cfg.repeats; ++r) {
    const Dataset train_raw = subset(data, plan.train_indices[r]);
    const Dataset test_raw = subset(data, plan.test_indices[r]);
    const ScalerParams scaler = fit_standardizer(train_raw);
    const Dataset train = apply_standardizer(scaler, train_raw);
    const Dataset test = apply_standardizer(scaler, test_raw);

    BaseModels base;
    const TopKSpec grad_spec{0, cfg.grad_fraction};

    // The base model for a repeat is trained first and shared by every
    // method on that repeat.
    for (const auto& model : cfg.models) {
      const auto t0 = std::chrono::steady_clock::now();
      const std::uint64_t seed = cell_seed(cfg.seed, r, "base", model);
      CellResult cell;
      cell.method = "base";
      cell.model = model;
      cell.repeat = r;

      std::vector<int> pred;
      if (model == "logreg") {
        base.logreg = train_logreg(train.features, train.labels, nullptr,
                                   lg_cfg(cfg, seed));
        pred = base.logreg->predict(test.features);
        cell.converged = base.logreg->converged;
        base.logreg_topk = topk_ce(*base.logreg, test.features, test.labels, 2,
                                   cfg.topk);
        cell.diagnostics = {
            {"frobenius_norm",
             frobenius_norm(Matrix(base.logreg->weights.transpose()))},
            {"topk_sets", topk_sets_json(*base.logreg_topk)},
            {"ce_magnitudes", magnitudes_json(*base.logreg_topk)}};
      } else if (model == "svm") {
        base.svm = train_svm(train.features, train.labels, cfg.svm_c,
                             kernel_from_cfg(cfg), nullptr, train.instance_ids);
        pred = base.svm->predict(test.features);
        cell.converged = base.svm->converged;
        AugmentedDataset plain = augment_input("base", train, cfg, seed);
        cell.diagnostics = census_json(sv_census(*base.svm, plain, nullptr));
        cell.diagnostics["gamma"] = base.svm->kernel.gamma;
      } else {
        base.mlp = train_mlp(train.features, train.labels, nullptr,
                             mlp_cfg(cfg, seed));
        pred = base.mlp->predict(test.features);
        base.mlp_topk_inst = topk_input_grad(*base.mlp, test.features, grad_spec);
        base.mlp_topk_agg = topk_input_grad_aggregate(
            *base.mlp_topk_inst, test.labels, 2, test.dims());
        cell.diagnostics = {
            {"frobenius_norm", frobenius_norm(mlp_stack(*base.mlp))},
            {"topk_sets", topk_sets_json(*base.mlp_topk_agg)},
            {"grad_magnitudes", magnitudes_json(*base.mlp_topk_agg)}};
      }
      cell.bac = balanced_accuracy(test.labels, pred);
      cell.macro_f1 = macro_f1(test.labels, pred);
      cell.wall_clock_s =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
              .count();
      if (std::count(cfg.methods.begin(), cfg.methods.end(), "base"))
        results.push_back(std::move(cell));
    }

    for (const auto& method : cfg.methods) {
      if (method == "base") continue;
      for (const auto& model : cfg.models) {
        if (kLatentMethods.count(method) && model != "mlp") continue;
        const auto t0 = std::chrono::steady_clock::now();
        const std::uint64_t seed = cell_seed(cfg.seed, r, method, model);
        CellResult cell;
        cell.method = method;
        cell.model = model;
        cell.repeat = r;

        try {
          const bool cs = method == "cs";
          const bool latent_method = kLatentMethods.count(method) > 0;
          ClassWeights weights;
          const ClassWeights* weights_ptr = nullptr;
          if (cs) {
            weights = class_weights(train);
            weights_ptr = &weights;
          }

          AugmentedDataset aug;
          if (!latent_method) aug = augment_input(method, train, cfg, seed);

          std::vector<int> pred;
          if (model == "logreg") {
            LinearModel m;
            if (aug.soft_labels) {
              const Vector targets = aug.soft_labels->col(1);
              m = train_logreg(aug.data.features, targets, nullptr,
                               lg_cfg(cfg, seed));
            } else {
              m = train_logreg(aug.data.features, aug.data.labels, weights_ptr,
                               lg_cfg(cfg, seed));
            }
            pred = m.predict(test.features);
            cell.converged = m.converged;
            const auto topk =
                topk_ce(m, test.features, test.labels, 2, cfg.topk);
            const auto diff =
                weight_diff_pct(Matrix(base.logreg->weights.transpose()),
                                Matrix(m.weights.transpose()));
            cell.diagnostics = {
                {"frobenius_norm",
                 frobenius_norm(Matrix(m.weights.transpose()))},
                {"weight_diff_pct", diff.mean_pct},
                {"weight_diff_excluded", diff.excluded},
                {"topk_overlap", topk_overlap(*base.logreg_topk, topk)},
                {"topk_sets", topk_sets_json(topk)},
                {"ce_magnitudes", magnitudes_json(topk)}};
          } else if (model == "svm") {
            const auto m = train_svm(aug.data.features, aug.data.labels,
                                     cfg.svm_c, kernel_from_cfg(cfg),
                                     weights_ptr, aug.data.instance_ids);
            pred = m.predict(test.features);
            cell.converged = m.converged;
            cell.diagnostics = census_json(sv_census(m, aug, &*base.svm));
            cell.diagnostics["gamma"] = m.kernel.gamma;
          } else {
            MlpModel m;
            if (latent_method) {
              Dataset latent = train;
              latent.features = base.mlp->latent_encode(train.features);
              const AugmentedDataset laug =
                  method == "dsm" ? dsm(latent, cfg.k_neighbors, seed)
                                  : eos(latent, cfg.k_neighbors, seed);
              const Matrix targets = one_hot(laug.data.labels, 2);
              m = retrain_head(*base.mlp, laug.data.features, targets, nullptr,
                               mlp_cfg(cfg, seed));
            } else if (aug.soft_labels) {
              m = train_mlp(aug.data.features, *aug.soft_labels, nullptr,
                            mlp_cfg(cfg, seed));
            } else {
              m = train_mlp(aug.data.features, aug.data.labels, weights_ptr,
                            mlp_cfg(cfg, seed));
            }
            pred = m.predict(test.features);
            const auto inst = topk_input_grad(m, test.features, grad_spec);
            const auto agg =
                topk_input_grad_aggregate(inst, test.labels, 2, test.dims());
            const auto diff = weight_diff_pct(mlp_stack(*base.mlp), mlp_stack(m));
            const auto head_diff =
                weight_diff_pct(base.mlp->weights.back(), m.weights.back());
            cell.diagnostics = {
                {"frobenius_norm", frobenius_norm(mlp_stack(m))},
                {"weight_diff_pct", diff.mean_pct},
                {"head_weight_diff_pct", head_diff.mean_pct},
                {"weight_diff_excluded", diff.excluded},
                {"topk_overlap", topk_overlap(*base.mlp_topk_inst, inst)},
                {"topk_overlap_aggregate",
                 topk_overlap(*base.mlp_topk_agg, agg)},
                {"topk_sets", topk_sets_json(agg)},
                {"grad_magnitudes", magnitudes_json(agg)}};
          }
          cell.bac = balanced_accuracy(test.labels, pred);
          cell.macro_f1 = macro_f1(test.labels, pred);
          if (method == "remix")
            cell.diagnostics["remix_note"] =
                "majority under-sampled to the geometric mean of class counts; "
                "lambda ~ Beta(alpha, alpha)";
        } catch (const std::exception& e) {
          // per-cell failures are recorded, not fatal
          cell.converged = false;
          cell.diagnostics = {{"error", e.what()}};
          cell.bac = std::numeric_limits<double>::quiet_NaN();
          cell.macro_f1 = std::numeric_limits<double>::quiet_NaN();
        }
        cell.wall_clock_s =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                .count();
        results.push_back(std::move(cell));
      }
    }
  }
  return results;
}

std::vector<CellResult> run_experiment(const ExperimentConfig& cfg) {
  return run_experiment(cfg, load_or_generate(cfg));
}

namespace {

std::string fmt(double v) {
  std::ostringstream ss;
  ss.precision(10);
  ss << v;
  return ss.str();
}

struct Agg {
  std::vector<double> bac, f1;
  std::map<std::string, std::vector<double>> diag;
};

double mean(const std::vector<double>& v) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double stddev(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

} // namespace

void emit_reports(const ExperimentConfig& cfg,
                  const std::vector<CellResult>& results) {
  if (results.empty()) throw std::invalid_argument("emit_reports: no results");
  namespace fs = std::filesystem;
  const fs::path out(cfg.out_dir);
  fs::create_directories(out / "cells");
  fs::create_directories(out / "magnitudes");

  {
    std::ofstream f(out / "config.json");
    f << cfg.to_json().dump(2) << "\n";
  }

  const std::vector<std::string> diag_cols = {
      "weight_diff_pct",     "topk_overlap",       "sv_multiple_vs_base",
      "class_ratio_maj_min", "synthetic_sv_ratio", "new_sv_ratio"};

  std::map<std::pair<std::string, std::string>, Agg> agg;
  for (const auto& cell : results) {
    json j = {{"method", cell.method},     {"model", cell.model},
              {"repeat", cell.repeat},     {"bac", cell.bac},
              {"macro_f1", cell.macro_f1}, {"converged", cell.converged},
              {"diagnostics", cell.diagnostics}};
    const std::string name =
        cell.method + "_" + cell.model + "_r" + std::to_string(cell.repeat);
    std::ofstream f(out / "cells" / (name + ".json"));
    f << j.dump(2) << "\n";

    // per-feature magnitude arrays as CSV for external plotting
    const char* mag_key = cell.diagnostics.contains("ce_magnitudes")
                              ? "ce_magnitudes"
                              : (cell.diagnostics.contains("grad_magnitudes")
                                     ? "grad_magnitudes"
                                     : nullptr);
    if (mag_key) {
      std::ofstream mf(out / "magnitudes" / (name + ".csv"));
      const auto& mags = cell.diagnostics.at(mag_key);
      mf << "feature";
      for (std::size_t c = 0; c < mags.size(); ++c) mf << ",class" << c;
      mf << "\n";
      if (!mags.empty()) {
        for (std::size_t ft = 0; ft < mags[0].size(); ++ft) {
          mf << ft;
          for (std::size_t c = 0; c < mags.size(); ++c)
            mf << "," << fmt(mags[c][ft].get<double>());
          mf << "\n";
        }
      }
    }

    auto& a = agg[{cell.method, cell.model}];
    if (std::isfinite(cell.bac)) {
      a.bac.push_back(cell.bac);
      a.f1.push_back(cell.macro_f1);
    }
    for (const auto& col : diag_cols)
      if (cell.diagnostics.contains(col) && cell.diagnostics.at(col).is_number())
        a.diag[col].push_back(cell.diagnostics.at(col).get<double>());
  }

  std::ofstream csv(out / "aggregate.csv");
  csv << "method,model,bac_mean,bac_std,f1_mean,f1_std";
  for (const auto& col : diag_cols) csv << "," << col << "_mean," << col << "_std";
  csv << "\n";
  for (const auto& [key, a] : agg) {
    csv << key.first << "," << key.second << "," << fmt(mean(a.bac)) << ","
        << fmt(stddev(a.bac)) << "," << fmt(mean(a.f1)) << ","
        << fmt(stddev(a.f1));
    for (const auto& col : diag_cols) {
      const auto it = a.diag.find(col);
      if (it == a.diag.end()) {
        csv << ",,";
      } else {
        csv << "," << fmt(mean(it->second)) << "," << fmt(stddev(it->second));
      }
    }
    csv << "\n";
  }
}

} // namespace imbaug
