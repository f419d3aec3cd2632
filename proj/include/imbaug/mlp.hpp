#pragma once

#include "imbaug/logreg.hpp" // TrainConfig
#include "imbaug/types.hpp"

namespace imbaug {

/// Dense network d -> 100 -> 50 -> ceil(d/2) -> 2 with rectifier activations
/// between layers. The penultimate activations are the latent space used by
/// the latent over-samplers.
struct MlpModel {
  std::vector<Matrix> weights; // weights[l]: in_l x out_l
  std::vector<Vector> biases;
  TrainConfig config;

  Index input_dim() const { return weights.empty() ? 0 : weights[0].rows(); }
  Index latent_dim() const {
    return weights.empty() ? 0 : weights.back().rows();
  }
  int n_classes() const {
    return weights.empty() ? 0 : static_cast<int>(weights.back().cols());
  }

  Matrix logits(const Matrix& X) const;
  /// Post-activation output of the penultimate layer.
  Matrix latent_encode(const Matrix& X) const;
  std::vector<int> predict(const Matrix& X) const;
  /// Gradient of the predicted-class logit with respect to the input.
  Vector input_gradients(const Vector& x) const;
};

/// Seeded uniform fan-in initialization; no training steps taken.
MlpModel init_mlp(Index input_dim, const TrainConfig& cfg);

/// Mini-batch gradient descent on (optionally class- or sample-weighted)
/// cross-entropy against hard or soft targets. Bit-deterministic under
/// (data, config, seed).
MlpModel train_mlp(const Matrix& X, const Matrix& soft_targets,
                   const Vector* sample_weights, const TrainConfig& cfg);
MlpModel train_mlp(const Matrix& X, const std::vector<int>& labels,
                   const ClassWeights* weights, const TrainConfig& cfg);

/// Freezes the encoder layers bit-identically and retrains only the final
/// classification layer on data already living in latent space.
MlpModel retrain_head(const MlpModel& model, const Matrix& latent_X,
                      const Matrix& soft_targets, const Vector* sample_weights,
                      const TrainConfig& cfg);

Matrix one_hot(const std::vector<int>& labels, int n_classes);

} // namespace imbaug
