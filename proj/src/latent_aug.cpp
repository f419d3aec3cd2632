#include "imbaug/latent_aug.hpp"

#include "imbaug/knn.hpp"
#include "imbaug/resampling.hpp"

#include <algorithm>
#include <random>

namespace imbaug {

AugmentedDataset dsm(const Dataset& latent, Index k, std::uint64_t seed) {
  return smote(latent, k, seed);
}

AugmentedDataset eos(const Dataset& latent, Index k, std::uint64_t seed) {
  if (k < 1) throw std::invalid_argument("eos: k must be >= 1");
  AugmentedDataset out;
  out.data = latent;
  for (std::int64_t id : latent.instance_ids)
    out.provenance.push_back({Origin::natural, id, std::nullopt, std::nullopt});

  std::mt19937_64 rng(seed);
  const auto counts = latent.class_counts();
  const Index target = *std::max_element(counts.begin(), counts.end());
  std::int64_t next_id = 0;
  for (std::int64_t id : latent.instance_ids) next_id = std::max(next_id, id + 1);

  for (int c = 0; c < latent.n_classes; ++c) {
    const auto idx = latent.indices_of_class(c);
    const Index deficit = target - static_cast<Index>(idx.size());
    if (deficit == 0) continue;

    // k nearest rows of any other class, per minority row
    std::vector<Index> adversaries;
    for (Index i = 0; i < latent.rows(); ++i)
      if (latent.labels[static_cast<std::size_t>(i)] != c) adversaries.push_back(i);
    if (adversaries.empty())
      throw std::invalid_argument("eos: no adversary-class rows");
    const Index k_eff = std::min<Index>(k, static_cast<Index>(adversaries.size()));

    std::vector<std::vector<Index>> adv_nn(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) {
      std::vector<std::pair<double, Index>> dist;
      dist.reserve(adversaries.size());
      for (Index a : adversaries)
        dist.push_back({(latent.features.row(idx[i]) - latent.features.row(a))
                            .squaredNorm(),
                        a});
      std::partial_sort(dist.begin(), dist.begin() + k_eff, dist.end());
      for (Index t = 0; t < k_eff; ++t)
        adv_nn[i].push_back(dist[static_cast<std::size_t>(t)].second);
    }

    std::uniform_int_distribution<std::size_t> pick_row(0, idx.size() - 1);
    std::uniform_int_distribution<Index> pick_nn(0, k_eff - 1);
    std::uniform_real_distribution<double> half(0.0, 0.5);
    for (Index g = 0; g < deficit; ++g) {
      const std::size_t i = pick_row(rng);
      const Index adv = adv_nn[i][static_cast<std::size_t>(pick_nn(rng))];
      const double lambda = half(rng);
      const Vector row = interpolate(latent.features.row(idx[i]).transpose(),
                                     latent.features.row(adv).transpose(), lambda);
      Dataset& d = out.data;
      d.features.conservativeResize(d.rows() + 1, Eigen::NoChange);
      d.features.row(d.rows() - 1) = row.transpose();
      d.labels.push_back(c);
      d.instance_ids.push_back(next_id++);
      out.provenance.push_back(
          {Origin::synthetic, latent.instance_ids[static_cast<std::size_t>(idx[i])],
           latent.instance_ids[static_cast<std::size_t>(adv)], lambda});
    }
  }
  return out;
}

} // namespace imbaug
