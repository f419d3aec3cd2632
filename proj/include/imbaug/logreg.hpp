#pragma once

#include "imbaug/types.hpp"

namespace imbaug {

struct TrainConfig {
  double learning_rate = 0.5;
  int epochs = 2000;
  int batch_size = 32;
  double l2 = 1e-2;
  std::uint64_t seed = 0;
  double tolerance = 1e-6;
};

/// Binary L2 logistic regression. Score > 0 predicts class 1, score <= 0
/// class 0 (ties go to the lower class id).
struct LinearModel {
  Vector weights;
  double bias = 0.0;
  double l2 = 0.0;
  bool converged = false;
  int epochs_run = 0;

  Vector decision_values(const Matrix& X) const;
  std::vector<int> predict(const Matrix& X) const;
};

/// Gradient of the class-weighted NLL + (l2/2)|W|^2 objective at (w, b).
/// `targets` are class-1 probabilities in [0,1] (hard labels are 0/1).
/// Exposed so tests can compare against finite differences.
std::pair<Vector, double> logreg_gradient(const Matrix& X, const Vector& targets,
                                          const Vector& sample_weights,
                                          const Vector& w, double bias,
                                          double l2);

double logreg_loss(const Matrix& X, const Vector& targets,
                   const Vector& sample_weights, const Vector& w, double bias,
                   double l2);

/// Full-batch gradient descent with a fixed step; deterministic.
LinearModel train_logreg(const Matrix& X, const Vector& targets,
                         const Vector* sample_weights, const TrainConfig& cfg);

/// Convenience overload for hard labels with optional per-class weights.
LinearModel train_logreg(const Matrix& X, const std::vector<int>& labels,
                         const ClassWeights* weights, const TrainConfig& cfg);

} // namespace imbaug
