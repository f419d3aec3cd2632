#include "imbaug/svm.hpp"

#include <cmath>
#include <limits>

namespace imbaug {

namespace {

double resolve_gamma(const KernelSpec& kernel, const Matrix& X) {
  if (kernel.type == KernelSpec::Type::linear) return 0.0;
  if (kernel.gamma > 0.0) return kernel.gamma;
  const Vector mean = X.colwise().mean();
  const double var =
      (X.rowwise() - mean.transpose()).array().square().mean();
  const double denom = static_cast<double>(X.cols()) * var;
  return denom > 0.0 ? 1.0 / denom : 1.0;
}

} // namespace

Matrix kernel_matrix(const KernelSpec& kernel, const Matrix& A,
                     const Matrix& B) {
  if (kernel.type == KernelSpec::Type::linear) return A * B.transpose();
  const double gamma = kernel.gamma;
  const Vector a2 = A.rowwise().squaredNorm();
  const Vector b2 = B.rowwise().squaredNorm();
  Matrix d2 = -2.0 * (A * B.transpose());
  d2.colwise() += a2;
  d2.rowwise() += b2.transpose();
  return (-gamma * d2.array().max(0.0)).exp();
}

Vector SvmModel::decision_values(const Matrix& X) const {
  if (X.cols() != support_vectors.cols())
    throw std::invalid_argument("svm: feature dimension mismatch");
  const Matrix K = kernel_matrix(kernel, X, support_vectors);
  return (K * dual_coefs).array() + bias;
}

std::vector<int> SvmModel::predict(const Matrix& X) const {
  const Vector z = decision_values(X);
  std::vector<int> out(static_cast<std::size_t>(z.size()));
  for (Index i = 0; i < z.size(); ++i)
    out[static_cast<std::size_t>(i)] = z(i) > 0.0 ? 1 : 0;
  return out;
}

SvmModel train_svm(const Matrix& X, const std::vector<int>& labels, double C,
                   const KernelSpec& kernel, const ClassWeights* weights,
                   const std::vector<std::int64_t>& instance_ids,
                   double kkt_tolerance, int max_iterations) {
  const Index n = X.rows();
  if (static_cast<Index>(labels.size()) != n ||
      static_cast<Index>(instance_ids.size()) != n)
    throw std::invalid_argument("svm: label/id length mismatch");

  Vector y(n);
  Vector box(n);
  for (Index i = 0; i < n; ++i) {
    const int lab = labels[static_cast<std::size_t>(i)];
    if (lab != 0 && lab != 1)
      throw std::invalid_argument("svm: binary labels required");
    y(i) = lab == 1 ? 1.0 : -1.0;
    box(i) = C * (weights ? weights->weights(lab) : 1.0);
  }

  KernelSpec resolved = kernel;
  resolved.gamma = resolve_gamma(kernel, X);
  const Matrix K = kernel_matrix(resolved, X, X);

  // dual: min 0.5 a'Qa - sum(a), Q_ij = y_i y_j K_ij, 0 <= a_i <= box_i,
  // sum(y a) = 0. G_i = sum_j a_j y_j K_ij (margin without bias).
  Vector alpha = Vector::Zero(n);
  Vector G = Vector::Zero(n);

  const double inf = std::numeric_limits<double>::infinity();
  int iter = 0;
  bool converged = false;
  double m_up = 0.0, m_low = 0.0;
  for (; iter < max_iterations; ++iter) {
    // maximal violating pair over -E_i = -(G_i - y_i)
    Index i = -1, j = -1;
    m_up = -inf;
    m_low = inf;
    for (Index t = 0; t < n; ++t) {
      const double neg_e = y(t) - G(t);
      const bool in_up = (y(t) > 0.0 && alpha(t) < box(t)) ||
                         (y(t) < 0.0 && alpha(t) > 0.0);
      const bool in_low = (y(t) > 0.0 && alpha(t) > 0.0) ||
                          (y(t) < 0.0 && alpha(t) < box(t));
      if (in_up && neg_e > m_up) {
        m_up = neg_e;
        i = t;
      }
      if (in_low && neg_e < m_low) {
        m_low = neg_e;
        j = t;
      }
    }
    if (i < 0 || j < 0 || m_up - m_low < kkt_tolerance) {
      converged = true;
      break;
    }

    const double ei = G(i) - y(i);
    const double ej = G(j) - y(j);
    double eta = K(i, i) + K(j, j) - 2.0 * K(i, j);
    if (eta <= 1e-12) eta = 1e-12;

    double lo, hi;
    if (y(i) != y(j)) {
      lo = std::max(0.0, alpha(j) - alpha(i));
      hi = std::min(box(j), box(i) + alpha(j) - alpha(i));
    } else {
      lo = std::max(0.0, alpha(i) + alpha(j) - box(i));
      hi = std::min(box(j), alpha(i) + alpha(j));
    }

    const double aj_old = alpha(j);
    const double ai_old = alpha(i);
    double aj = aj_old + y(j) * (ei - ej) / eta;
    aj = std::clamp(aj, lo, hi);
    double ai = ai_old + y(i) * y(j) * (aj_old - aj);
    // cancellation can leave a bound-bound variable at ~1e-17 instead of
    // exactly on its bound, which keeps it selectable but unmovable
    auto snap = [](double a, double bound) {
      if (a < 1e-12) return 0.0;
      if (a > bound - 1e-12) return bound;
      return a;
    };
    aj = snap(aj, box(j));
    ai = snap(ai, box(i));
    alpha(j) = aj;
    alpha(i) = ai;

    G += (ai - ai_old) * y(i) * K.col(i) + (aj - aj_old) * y(j) * K.col(j);
  }

  SvmModel model;
  model.kernel = resolved;
  model.C = C;
  model.converged = converged;
  model.iterations = iter;
  // bias from the midpoint of the optimality gap
  model.bias =
      std::isfinite(m_up) && std::isfinite(m_low) ? 0.5 * (m_up + m_low) : 0.0;

  constexpr double kSvThreshold = 1e-8;
  std::vector<Index> sv;
  for (Index t = 0; t < n; ++t)
    if (std::abs(alpha(t)) > kSvThreshold) sv.push_back(t);

  model.support_rows = sv;
  model.dual_coefs.resize(static_cast<Index>(sv.size()));
  model.support_vectors.resize(static_cast<Index>(sv.size()), X.cols());
  for (std::size_t s = 0; s < sv.size(); ++s) {
    model.support_ids.push_back(instance_ids[static_cast<std::size_t>(sv[s])]);
    model.support_labels.push_back(labels[static_cast<std::size_t>(sv[s])]);
    model.dual_coefs(static_cast<Index>(s)) = alpha(sv[s]) * y(sv[s]);
    model.support_vectors.row(static_cast<Index>(s)) = X.row(sv[s]);
  }
  return model;
}

} // namespace imbaug
