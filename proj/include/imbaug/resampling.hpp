#pragma once

#include "imbaug/types.hpp"

namespace imbaug {

/// Linear interpolation between two parent rows; the same expression is used
/// when replaying provenance, so replay is bit-identical.
inline Vector interpolate(const Vector& a, const Vector& b, double lambda) {
  return a + lambda * (b - a);
}

/// Random over-sampling: exact copies of minority rows until all class
/// counts equal the majority count. Copies stay natural-origin but carry
/// the source row's id as parent_a and a fresh instance_id.
AugmentedDataset ros(const Dataset& data, std::uint64_t seed);

/// Synthetic minority over-sampling: interpolation toward a same-class
/// nearest neighbor with lambda ~ Uniform(0,1).
AugmentedDataset smote(const Dataset& data, Index k, std::uint64_t seed);

/// Adaptive variant: synthetic points are allocated toward minority
/// instances with many other-class points among their k nearest neighbors
/// in the full set. When no instance is borderline the allocation falls
/// back to uniform (reported through `uniform_fallback`).
AugmentedDataset adasyn(const Dataset& data, Index k, std::uint64_t seed,
                        bool* uniform_fallback = nullptr);

/// Mixes majority/minority pairs with lambda ~ Beta(alpha, alpha) and soft
/// labels; the majority class is first under-sampled to the geometric mean
/// of the class counts. Hard labels are the argmax of the soft label with
/// ties going to the minority class. Binary only.
AugmentedDataset remix(const Dataset& data, double alpha, std::uint64_t seed);

/// w_c = n_total / (N * n_c)
ClassWeights class_weights(const Dataset& data);

/// Reconstructs a synthetic row from its recorded parents and lambda.
/// `source` must contain both parent instance_ids.
Vector replay_synthetic(const Dataset& source, const SyntheticProvenance& p);

} // namespace imbaug
