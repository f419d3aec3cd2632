#include "imbaug/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace imbaug {

double frobenius_norm(const Matrix& weights) { return weights.norm(); }

double frobenius_norm(const std::vector<Matrix>& layers) {
  double sum = 0.0;
  for (const auto& w : layers) sum += w.squaredNorm();
  return std::sqrt(sum);
}

namespace {

constexpr double kBaseWeightFloor = 1e-12;

void accumulate_diff(const Matrix& base, const Matrix& aug, double& sum,
                     Index& included, Index& excluded) {
  if (base.rows() != aug.rows() || base.cols() != aug.cols())
    throw std::invalid_argument("weight_diff_pct: shape mismatch");
  for (Index j = 0; j < base.cols(); ++j)
    for (Index i = 0; i < base.rows(); ++i) {
      const double b = std::abs(base(i, j));
      if (b < kBaseWeightFloor) {
        ++excluded;
        continue;
      }
      sum += std::abs(aug(i, j) - base(i, j)) / b;
      ++included;
    }
}

/// Stable descending argsort; equal magnitudes keep the lower index first.
std::vector<Index> argsort_desc(const Vector& values) {
  std::vector<Index> order(static_cast<std::size_t>(values.size()));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
    return values(a) > values(b);
  });
  return order;
}

} // namespace

WeightDiff weight_diff_pct(const Matrix& base, const Matrix& aug) {
  double sum = 0.0;
  Index included = 0, excluded = 0;
  accumulate_diff(base, aug, sum, included, excluded);
  return {included > 0 ? sum / static_cast<double>(included) : 0.0, excluded};
}

WeightDiff weight_diff_pct(const std::vector<Matrix>& base,
                           const std::vector<Matrix>& aug) {
  if (base.size() != aug.size())
    throw std::invalid_argument("weight_diff_pct: layer count mismatch");
  double sum = 0.0;
  Index included = 0, excluded = 0;
  for (std::size_t l = 0; l < base.size(); ++l)
    accumulate_diff(base[l], aug[l], sum, included, excluded);
  return {included > 0 ? sum / static_cast<double>(included) : 0.0, excluded};
}

SvCensus sv_census(const SvmModel& model, const AugmentedDataset& train,
                   const SvmModel* base_model) {
  std::unordered_map<std::int64_t, std::size_t> row_of_id;
  for (std::size_t i = 0; i < train.data.instance_ids.size(); ++i)
    row_of_id[train.data.instance_ids[i]] = i;

  SvCensus census;
  census.sv_count_per_class.assign(
      static_cast<std::size_t>(train.data.n_classes), 0);
  census.dual_sum_per_class.assign(
      static_cast<std::size_t>(train.data.n_classes), 0.0);

  Index synthetic = 0;
  Index natural = 0;
  Index new_natural = 0;
  std::unordered_set<std::int64_t> base_ids;
  if (base_model)
    base_ids.insert(base_model->support_ids.begin(),
                    base_model->support_ids.end());

  for (std::size_t s = 0; s < model.support_ids.size(); ++s) {
    const auto it = row_of_id.find(model.support_ids[s]);
    if (it == row_of_id.end())
      throw std::invalid_argument("sv_census: SV id absent from training set");
    const int cls = train.data.labels[it->second];
    census.sv_count_per_class[static_cast<std::size_t>(cls)]++;
    census.dual_sum_per_class[static_cast<std::size_t>(cls)] +=
        model.dual_coefs(static_cast<Index>(s));
    if (train.provenance[it->second].origin == Origin::synthetic) {
      ++synthetic;
    } else {
      ++natural;
      if (!base_ids.count(model.support_ids[s])) ++new_natural;
    }
  }

  const auto total = static_cast<double>(model.support_ids.size());
  census.synthetic_sv_ratio = total > 0 ? synthetic / total : 0.0;
  census.new_sv_ratio =
      base_model && natural > 0 ? static_cast<double>(new_natural) / natural : 0.0;
  census.sv_multiple_vs_base =
      base_model && !base_model->support_ids.empty()
          ? total / static_cast<double>(base_model->support_ids.size())
          : 1.0;

  const auto train_counts = train.data.class_counts();
  const int maj = static_cast<int>(
      std::max_element(train_counts.begin(), train_counts.end()) -
      train_counts.begin());
  const int min_c = static_cast<int>(
      std::min_element(train_counts.begin(), train_counts.end()) -
      train_counts.begin());
  const auto min_svs = census.sv_count_per_class[static_cast<std::size_t>(min_c)];
  census.class_ratio_maj_min =
      min_svs > 0 ? static_cast<double>(
                        census.sv_count_per_class[static_cast<std::size_t>(maj)]) /
                        static_cast<double>(min_svs)
                  : std::numeric_limits<double>::infinity();
  return census;
}

TopKReport topk_ce(const LinearModel& model, const Matrix& X,
                   const std::vector<int>& labels, int n_classes, int K) {
  if (K > X.cols()) throw std::invalid_argument("topk_ce: K > feature count");
  TopKReport report;
  report.mode = TopKReport::Mode::per_class_aggregate;
  report.K = K;
  for (int c = 0; c < n_classes; ++c) {
    Vector mean_abs_ce = Vector::Zero(X.cols());
    Index count = 0;
    for (Index i = 0; i < X.rows(); ++i) {
      if (labels[static_cast<std::size_t>(i)] != c) continue;
      mean_abs_ce.array() +=
          (X.row(i).transpose().array() * model.weights.array()).abs();
      ++count;
    }
    if (count > 0) mean_abs_ce /= static_cast<double>(count);
    const auto order = argsort_desc(mean_abs_ce);
    report.top_sets.push_back(
        {order.begin(), order.begin() + static_cast<std::size_t>(K)});
    report.magnitudes.push_back(std::move(mean_abs_ce));
  }
  return report;
}

double topk_overlap(const TopKReport& base, const TopKReport& other) {
  if (base.mode != other.mode || base.K != other.K ||
      base.top_sets.size() != other.top_sets.size())
    throw std::invalid_argument("topk_overlap: incompatible reports");
  Index shared = 0;
  for (std::size_t s = 0; s < base.top_sets.size(); ++s) {
    const std::set<Index> a(base.top_sets[s].begin(), base.top_sets[s].end());
    for (Index f : other.top_sets[s])
      if (a.count(f)) ++shared;
  }
  return static_cast<double>(shared) /
         (static_cast<double>(base.top_sets.size()) * base.K);
}

TopKReport topk_input_grad(const MlpModel& model, const Matrix& X,
                           const TopKSpec& spec) {
  const Index d = X.cols();
  const int K = spec.K > 0
                    ? spec.K
                    : static_cast<int>(std::ceil(spec.fraction * static_cast<double>(d)));
  if (K > d) throw std::invalid_argument("topk_input_grad: K > feature count");

  TopKReport report;
  report.mode = TopKReport::Mode::per_instance;
  report.K = K;
  for (Index i = 0; i < X.rows(); ++i) {
    Vector mag = model.input_gradients(X.row(i).transpose()).cwiseAbs();
    const auto order = argsort_desc(mag);
    report.top_sets.push_back(
        {order.begin(), order.begin() + static_cast<std::size_t>(K)});
    report.magnitudes.push_back(std::move(mag));
  }
  return report;
}

TopKReport topk_input_grad_aggregate(const TopKReport& per_instance,
                                     const std::vector<int>& labels,
                                     int n_classes, Index d) {
  if (per_instance.mode != TopKReport::Mode::per_instance)
    throw std::invalid_argument("aggregate: per-instance report required");
  if (labels.size() != per_instance.top_sets.size())
    throw std::invalid_argument("aggregate: label length mismatch");

  TopKReport report;
  report.mode = TopKReport::Mode::per_class_aggregate;
  report.K = per_instance.K;
  for (int c = 0; c < n_classes; ++c) {
    Vector freq = Vector::Zero(d);
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (labels[i] != c) continue;
      for (Index f : per_instance.top_sets[i]) freq(f) += 1.0;
    }
    const auto order = argsort_desc(freq);
    report.top_sets.push_back(
        {order.begin(), order.begin() + static_cast<std::size_t>(report.K)});
    report.magnitudes.push_back(std::move(freq));
  }
  return report;
}

} // namespace imbaug
