#include "imbaug/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace imbaug {

namespace {

std::vector<Index> layer_widths(Index d) {
  return {d, 100, 50, (d + 1) / 2, 2};
}

Matrix relu(const Matrix& z) { return z.cwiseMax(0.0); }

Matrix softmax_rows(const Matrix& z) {
  Matrix out(z.rows(), z.cols());
  for (Index i = 0; i < z.rows(); ++i) {
    const Eigen::ArrayXd shifted = z.row(i).array() - z.row(i).maxCoeff();
    const Eigen::ArrayXd e = shifted.exp();
    out.row(i) = (e / e.sum()).matrix().transpose();
  }
  return out;
}

/// Forward pass keeping every post-activation; activations[0] is the input.
std::vector<Matrix> forward_all(const MlpModel& m, const Matrix& X) {
  std::vector<Matrix> acts;
  acts.push_back(X);
  for (std::size_t l = 0; l < m.weights.size(); ++l) {
    Matrix z = (acts.back() * m.weights[l]).rowwise() + m.biases[l].transpose();
    acts.push_back(l + 1 < m.weights.size() ? relu(z) : std::move(z));
  }
  return acts;
}

void sgd_epochs(MlpModel& m, const Matrix& X, const Matrix& targets,
                const Vector& sw, const TrainConfig& cfg, std::size_t first_layer) {
  const Index n = X.rows();
  std::mt19937_64 rng(cfg.seed + 0x9e3779b97f4a7c15ull);
  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  const Index bs = std::max<Index>(1, cfg.batch_size);

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    for (Index start = 0; start < n; start += bs) {
      const Index count = std::min<Index>(bs, n - start);
      Matrix xb(count, X.cols());
      Matrix tb(count, targets.cols());
      Vector wb(count);
      for (Index r = 0; r < count; ++r) {
        const Index src = order[static_cast<std::size_t>(start + r)];
        xb.row(r) = X.row(src);
        tb.row(r) = targets.row(src);
        wb(r) = sw(src);
      }

      auto acts = forward_all(m, xb);
      const Matrix probs = softmax_rows(acts.back());
      // d(weighted CE)/d(logits), normalized by batch weight mass
      Matrix delta = (probs - tb).array().colwise() * wb.array();
      delta /= wb.sum();

      for (std::size_t l = m.weights.size(); l-- > first_layer;) {
        const Matrix grad_w = acts[l].transpose() * delta;
        const Vector grad_b = delta.colwise().sum();
        if (l > first_layer) {
          Matrix back = delta * m.weights[l].transpose();
          delta = (acts[l].array() > 0.0).cast<double>() * back.array();
        }
        m.weights[l] -= cfg.learning_rate * grad_w;
        m.biases[l] -= cfg.learning_rate * grad_b;
      }
    }
  }
}

} // namespace

Matrix MlpModel::logits(const Matrix& X) const {
  if (X.cols() != input_dim())
    throw std::invalid_argument("mlp: feature dimension mismatch");
  return forward_all(*this, X).back();
}

Matrix MlpModel::latent_encode(const Matrix& X) const {
  if (X.cols() != input_dim())
    throw std::invalid_argument("mlp: feature dimension mismatch");
  auto acts = forward_all(*this, X);
  return acts[acts.size() - 2];
}

std::vector<int> MlpModel::predict(const Matrix& X) const {
  const Matrix z = logits(X);
  std::vector<int> out(static_cast<std::size_t>(z.rows()));
  for (Index i = 0; i < z.rows(); ++i) {
    Index best = 0;
    for (Index c = 1; c < z.cols(); ++c)
      if (z(i, c) > z(i, best)) best = c; // ties keep the lower class id
    out[static_cast<std::size_t>(i)] = static_cast<int>(best);
  }
  return out;
}

Vector MlpModel::input_gradients(const Vector& x) const {
  auto acts = forward_all(*this, x.transpose());
  const Matrix& out = acts.back();
  Index cls = 0;
  for (Index c = 1; c < out.cols(); ++c)
    if (out(0, c) > out(0, cls)) cls = c;

  // back-propagate the selected logit to the input
  Vector delta = weights.back().col(cls);
  for (std::size_t l = weights.size() - 1; l-- > 0;) {
    const Vector mask =
        (acts[l + 1].row(0).array() > 0.0).cast<double>().matrix();
    delta = weights[l] * (delta.array() * mask.array()).matrix();
  }
  return delta;
}

MlpModel init_mlp(Index input_dim, const TrainConfig& cfg) {
  const auto widths = layer_widths(input_dim);
  MlpModel m;
  m.config = cfg;
  std::mt19937_64 rng(cfg.seed);
  for (std::size_t l = 0; l + 1 < widths.size(); ++l) {
    const double bound = std::sqrt(1.0 / static_cast<double>(widths[l]));
    std::uniform_real_distribution<double> uni(-bound, bound);
    Matrix w(widths[l], widths[l + 1]);
    for (Index i = 0; i < w.rows(); ++i)
      for (Index j = 0; j < w.cols(); ++j) w(i, j) = uni(rng);
    m.weights.push_back(std::move(w));
    m.biases.push_back(Vector::Zero(widths[l + 1]));
  }
  return m;
}

Matrix one_hot(const std::vector<int>& labels, int n_classes) {
  Matrix t = Matrix::Zero(static_cast<Index>(labels.size()), n_classes);
  for (std::size_t i = 0; i < labels.size(); ++i)
    t(static_cast<Index>(i), labels[i]) = 1.0;
  return t;
}

MlpModel train_mlp(const Matrix& X, const Matrix& soft_targets,
                   const Vector* sample_weights, const TrainConfig& cfg) {
  if (soft_targets.rows() != X.rows())
    throw std::invalid_argument("mlp: target length mismatch");
  MlpModel m = init_mlp(X.cols(), cfg);
  const Vector sw = sample_weights ? *sample_weights : Vector::Ones(X.rows());
  sgd_epochs(m, X, soft_targets, sw, cfg, 0);
  return m;
}

MlpModel train_mlp(const Matrix& X, const std::vector<int>& labels,
                   const ClassWeights* weights, const TrainConfig& cfg) {
  const Matrix targets = one_hot(labels, 2);
  Vector sw = Vector::Ones(X.rows());
  if (weights)
    for (Index i = 0; i < X.rows(); ++i)
      sw(i) = weights->weights(labels[static_cast<std::size_t>(i)]);
  return train_mlp(X, targets, &sw, cfg);
}

MlpModel retrain_head(const MlpModel& model, const Matrix& latent_X,
                      const Matrix& soft_targets, const Vector* sample_weights,
                      const TrainConfig& cfg) {
  if (latent_X.cols() != model.latent_dim())
    throw std::invalid_argument("retrain_head: latent width mismatch");
  MlpModel m = model; // encoder layers are carried over bit-identically
  m.config = cfg;
  const Vector sw = sample_weights ? *sample_weights : Vector::Ones(latent_X.rows());

  // train only the final layer; feed latent activations straight into it
  MlpModel head;
  head.weights = {m.weights.back()};
  head.biases = {m.biases.back()};
  head.config = cfg;
  sgd_epochs(head, latent_X, soft_targets, sw, cfg, 0);
  m.weights.back() = head.weights[0];
  m.biases.back() = head.biases[0];
  return m;
}

} // namespace imbaug
