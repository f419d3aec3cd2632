#include "imbaug/knn.hpp"

#include <algorithm>
#include <numeric>

namespace imbaug {

std::vector<std::vector<Index>> knn_same_set(const Matrix& points, Index k,
                                             bool exclude_self) {
  const Index n = points.rows();
  const Index candidates = exclude_self ? n - 1 : n;
  if (k < 1 || k > candidates)
    throw std::invalid_argument("knn: k out of range for point count");

  std::vector<std::vector<Index>> result(static_cast<std::size_t>(n));
  std::vector<Index> order;

  for (Index i = 0; i < n; ++i) {
    Vector d2 =
        (points.rowwise() - points.row(i)).rowwise().squaredNorm();
    order.resize(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Index{0});
    auto closer = [&](Index a, Index b) {
      if (d2(a) != d2(b)) return d2(a) < d2(b);
      return a < b;
    };
    if (exclude_self)
      order.erase(std::remove(order.begin(), order.end(), i), order.end());
    std::partial_sort(order.begin(), order.begin() + k, order.end(), closer);
    result[static_cast<std::size_t>(i)].assign(order.begin(), order.begin() + k);
  }
  return result;
}

} // namespace imbaug
