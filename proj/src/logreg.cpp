#include "imbaug/logreg.hpp"

#include <cmath>

namespace imbaug {

namespace {

Vector sigmoid(const Vector& z) {
  return (1.0 / (1.0 + (-z.array()).exp())).matrix();
}

} // namespace

Vector LinearModel::decision_values(const Matrix& X) const {
  if (X.cols() != weights.size())
    throw std::invalid_argument("logreg: feature dimension mismatch");
  return (X * weights).array() + bias;
}

std::vector<int> LinearModel::predict(const Matrix& X) const {
  const Vector z = decision_values(X);
  std::vector<int> out(static_cast<std::size_t>(z.size()));
  for (Index i = 0; i < z.size(); ++i)
    out[static_cast<std::size_t>(i)] = z(i) > 0.0 ? 1 : 0;
  return out;
}

double logreg_loss(const Matrix& X, const Vector& targets,
                   const Vector& sample_weights, const Vector& w, double bias,
                   double l2) {
  const Vector z = (X * w).array() + bias;
  // -t*log(p) - (1-t)*log(1-p) written as log(1+exp(z)) - t*z for stability
  Eigen::ArrayXd softplus =
      (z.array() > 30.0).select(z.array(), (1.0 + z.array().exp()).log());
  const double n = static_cast<double>(X.rows());
  const double nll =
      (sample_weights.array() * (softplus - targets.array() * z.array())).sum() / n;
  return nll + 0.5 * l2 * w.squaredNorm();
}

std::pair<Vector, double> logreg_gradient(const Matrix& X, const Vector& targets,
                                          const Vector& sample_weights,
                                          const Vector& w, double bias,
                                          double l2) {
  const Vector z = (X * w).array() + bias;
  const Vector resid =
      (sigmoid(z).array() - targets.array()) * sample_weights.array();
  const double n = static_cast<double>(X.rows());
  Vector gw = X.transpose() * resid / n + l2 * w;
  const double gb = resid.sum() / n;
  return {std::move(gw), gb};
}

LinearModel train_logreg(const Matrix& X, const Vector& targets,
                         const Vector* sample_weights, const TrainConfig& cfg) {
  if (targets.size() != X.rows())
    throw std::invalid_argument("logreg: target length mismatch");
  const Vector sw = sample_weights ? *sample_weights : Vector::Ones(X.rows());

  LinearModel model;
  model.weights = Vector::Zero(X.cols());
  model.bias = 0.0;
  model.l2 = cfg.l2;
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    auto [gw, gb] = logreg_gradient(X, targets, sw, model.weights, model.bias,
                                    cfg.l2);
    const double gnorm = std::sqrt(gw.squaredNorm() + gb * gb);
    model.epochs_run = epoch;
    if (gnorm < cfg.tolerance) {
      model.converged = true;
      break;
    }
    model.weights -= cfg.learning_rate * gw;
    model.bias -= cfg.learning_rate * gb;
  }
  return model;
}

LinearModel train_logreg(const Matrix& X, const std::vector<int>& labels,
                         const ClassWeights* weights, const TrainConfig& cfg) {
  Vector targets(X.rows());
  Vector sw = Vector::Ones(X.rows());
  for (Index i = 0; i < X.rows(); ++i) {
    const int y = labels[static_cast<std::size_t>(i)];
    if (y != 0 && y != 1)
      throw std::invalid_argument("logreg: binary labels required");
    targets(i) = static_cast<double>(y);
    if (weights) sw(i) = weights->weights(y);
  }
  return train_logreg(X, targets, &sw, cfg);
}

} // namespace imbaug
