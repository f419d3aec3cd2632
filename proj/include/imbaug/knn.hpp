#pragma once

#include "imbaug/types.hpp"

namespace imbaug {

/// Brute-force k nearest neighbors within one point set (Euclidean metric).
/// Ties are broken by the lower row index so results are deterministic.
std::vector<std::vector<Index>> knn_same_set(const Matrix& points, Index k,
                                             bool exclude_self);

} // namespace imbaug
