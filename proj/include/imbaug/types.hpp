#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace imbaug {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Tabular dataset: one row per instance, labels in {0..n_classes-1},
/// instance ids stable across resampling so provenance can be traced back.
struct Dataset {
  Matrix features;                        // n x d
  std::vector<int> labels;                // length n
  std::vector<std::int64_t> instance_ids; // length n, unique
  int n_classes = 0;

  Index rows() const { return features.rows(); }
  Index dims() const { return features.cols(); }

  std::vector<Index> class_counts() const {
    std::vector<Index> counts(static_cast<std::size_t>(n_classes), 0);
    for (int y : labels) counts[static_cast<std::size_t>(y)]++;
    return counts;
  }

  std::vector<Index> indices_of_class(int c) const {
    std::vector<Index> out;
    for (Index i = 0; i < rows(); ++i)
      if (labels[static_cast<std::size_t>(i)] == c) out.push_back(i);
    return out;
  }

  void validate() const;
};

/// Per-column standardization parameters fit on training data only.
struct ScalerParams {
  Vector mean;
  Vector std_dev; // floored, always > 0
};

/// Repeated stratified shuffle-split plan.
struct SplitPlan {
  int repeats = 0;
  std::uint64_t seed = 0;
  std::vector<std::vector<Index>> train_indices;
  std::vector<std::vector<Index>> test_indices;
};

enum class Origin { natural, synthetic };

/// Where a row came from. Natural rows point at themselves (or, for exact
/// over-sampled copies, at the source row); synthetic rows record both
/// parents and the interpolation coefficient so the row can be replayed.
struct SyntheticProvenance {
  Origin origin = Origin::natural;
  std::int64_t parent_a = -1;
  std::optional<std::int64_t> parent_b;
  std::optional<double> lambda;
};

struct AugmentedDataset {
  Dataset data;
  std::vector<SyntheticProvenance> provenance; // one per row
  std::optional<Matrix> soft_labels;           // n x N, rows sum to 1 (remix)
};

struct ClassWeights {
  Vector weights; // length N, all > 0
};

} // namespace imbaug
