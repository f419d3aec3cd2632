#pragma once

#include "imbaug/types.hpp"

namespace imbaug {

struct KernelSpec {
  enum class Type { linear, rbf };
  Type type = Type::rbf;
  double gamma = 0.0; // <= 0 selects 1/(d * mean feature variance)
};

Matrix kernel_matrix(const KernelSpec& kernel, const Matrix& A, const Matrix& B);

/// Soft-margin SVM in dual form. Support vectors keep the training rows'
/// instance_ids so their natural/synthetic origin stays recoverable.
struct SvmModel {
  std::vector<std::int64_t> support_ids;
  std::vector<Index> support_rows; // row positions in the training set
  std::vector<int> support_labels; // class ids of the SVs
  Vector dual_coefs;               // alpha_i * y_i, one per SV
  double bias = 0.0;
  KernelSpec kernel;
  double C = 1.0;
  Matrix support_vectors; // SV feature rows
  bool converged = false;
  int iterations = 0;

  Vector decision_values(const Matrix& X) const;
  std::vector<int> predict(const Matrix& X) const;
};

/// Solves the dual problem with SMO-style maximal-violating-pair updates.
/// Per-class weights scale the box constraint: C_i = C * w_class(i).
SvmModel train_svm(const Matrix& X, const std::vector<int>& labels, double C,
                   const KernelSpec& kernel, const ClassWeights* weights,
                   const std::vector<std::int64_t>& instance_ids,
                   double kkt_tolerance = 1e-3, int max_iterations = 200000);

} // namespace imbaug
