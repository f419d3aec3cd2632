#include "imbaug/metrics.hpp"

#include <algorithm>

namespace imbaug {

namespace {

int infer_classes(const std::vector<int>& truth, const std::vector<int>& pred) {
  int n = 0;
  for (int y : truth) n = std::max(n, y + 1);
  for (int y : pred) n = std::max(n, y + 1);
  return n;
}

} // namespace

ConfusionMatrix ConfusionMatrix::from_labels(const std::vector<int>& truth,
                                             const std::vector<int>& pred,
                                             int n_classes) {
  if (truth.size() != pred.size())
    throw std::invalid_argument("confusion matrix: length mismatch");
  ConfusionMatrix cm;
  cm.counts = Eigen::MatrixX<std::int64_t>::Zero(n_classes, n_classes);
  for (std::size_t i = 0; i < truth.size(); ++i)
    cm.counts(truth[i], pred[i])++;
  return cm;
}

double balanced_accuracy(const std::vector<int>& truth,
                         const std::vector<int>& pred) {
  const int n_classes = infer_classes(truth, pred);
  const auto cm = ConfusionMatrix::from_labels(truth, pred, n_classes);
  double sum = 0.0;
  int present = 0;
  for (int c = 0; c < n_classes; ++c) {
    const auto total = cm.counts.row(c).sum();
    if (std::count(truth.begin(), truth.end(), c) == 0) continue;
    if (total == 0)
      throw std::invalid_argument("balanced_accuracy: empty class in truth");
    sum += static_cast<double>(cm.counts(c, c)) / static_cast<double>(total);
    ++present;
  }
  if (present == 0) throw std::invalid_argument("balanced_accuracy: no classes");
  return sum / static_cast<double>(present);
}

double macro_f1(const std::vector<int>& truth, const std::vector<int>& pred) {
  const int n_classes = infer_classes(truth, pred);
  const auto cm = ConfusionMatrix::from_labels(truth, pred, n_classes);
  double sum = 0.0;
  int present = 0;
  for (int c = 0; c < n_classes; ++c) {
    if (std::count(truth.begin(), truth.end(), c) == 0) continue;
    const double tp = static_cast<double>(cm.counts(c, c));
    const double fp = static_cast<double>(cm.counts.col(c).sum()) - tp;
    const double fn = static_cast<double>(cm.counts.row(c).sum()) - tp;
    const double denom = 2.0 * tp + fp + fn;
    sum += denom > 0.0 ? 2.0 * tp / denom : 0.0;
    ++present;
  }
  if (present == 0) throw std::invalid_argument("macro_f1: no classes");
  return sum / static_cast<double>(present);
}

} // namespace imbaug
