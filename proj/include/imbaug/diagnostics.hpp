#pragma once

#include "imbaug/logreg.hpp"
#include "imbaug/mlp.hpp"
#include "imbaug/svm.hpp"
#include "imbaug/types.hpp"

namespace imbaug {

/// sqrt of the sum of squared entries, optionally over a layer stack.
double frobenius_norm(const Matrix& weights);
double frobenius_norm(const std::vector<Matrix>& layers);

struct WeightDiff {
  double mean_pct = 0.0; // mean of |w_aug - w_base| / |w_base|
  Index excluded = 0;    // entries skipped because |w_base| ~ 0
};

WeightDiff weight_diff_pct(const Matrix& base, const Matrix& aug);
WeightDiff weight_diff_pct(const std::vector<Matrix>& base,
                           const std::vector<Matrix>& aug);

/// Support-vector census against the (possibly augmented) training set that
/// produced the model, optionally compared with the unaugmented base model.
struct SvCensus {
  std::vector<Index> sv_count_per_class;
  double sv_multiple_vs_base = 1.0;
  double class_ratio_maj_min = 1.0; // majority SV count / minority SV count
  std::vector<double> dual_sum_per_class;
  double new_sv_ratio = 0.0;       // natural SVs absent from the base SV set
  double synthetic_sv_ratio = 0.0; // SVs with synthetic provenance
};

SvCensus sv_census(const SvmModel& model, const AugmentedDataset& train,
                   const SvmModel* base_model);

struct TopKReport {
  enum class Mode { per_class_aggregate, per_instance };
  Mode mode = Mode::per_class_aggregate;
  int K = 10;
  std::vector<std::vector<Index>> top_sets; // one per class or per instance
  std::vector<Vector> magnitudes;           // per-feature magnitudes per set
};

/// Per class, classification embeddings CE_ij = x_ij * w_j over that class's
/// rows; features ranked by the mean absolute CE (ties to the lower index).
TopKReport topk_ce(const LinearModel& model, const Matrix& X,
                   const std::vector<int>& labels, int n_classes, int K = 10);

/// Sum of per-set intersection sizes normalized by (set count * K).
double topk_overlap(const TopKReport& base, const TopKReport& other);

struct TopKSpec {
  int K = 0;            // explicit count when > 0
  double fraction = 0.1; // otherwise ceil(fraction * d)
};

/// Per instance, |input gradient| ranked descending.
TopKReport topk_input_grad(const MlpModel& model, const Matrix& X,
                           const TopKSpec& spec);

/// Per-class sets built from how often each feature appears in the
/// per-instance top-K sets of that class's instances.
TopKReport topk_input_grad_aggregate(const TopKReport& per_instance,
                                     const std::vector<int>& labels,
                                     int n_classes, Index d);

} // namespace imbaug
