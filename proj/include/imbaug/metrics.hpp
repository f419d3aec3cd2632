#pragma once

#include "imbaug/types.hpp"

namespace imbaug {

/// Rows are the true class, columns the predicted class.
struct ConfusionMatrix {
  Eigen::MatrixX<std::int64_t> counts;

  static ConfusionMatrix from_labels(const std::vector<int>& truth,
                                     const std::vector<int>& pred,
                                     int n_classes);
};

/// Mean over classes of per-class recall.
double balanced_accuracy(const std::vector<int>& truth,
                         const std::vector<int>& pred);

/// Unweighted mean of per-class F1; a class with P + R = 0 contributes 0.
double macro_f1(const std::vector<int>& truth, const std::vector<int>& pred);

} // namespace imbaug
