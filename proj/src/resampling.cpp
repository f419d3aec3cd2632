#include "imbaug/resampling.hpp"

#include "imbaug/dataset.hpp"
#include "imbaug/knn.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <random>
#include <unordered_map>

namespace imbaug {

namespace {

AugmentedDataset wrap_natural(const Dataset& data) {
  AugmentedDataset out;
  out.data = data;
  out.provenance.reserve(static_cast<std::size_t>(data.rows()));
  for (std::int64_t id : data.instance_ids)
    out.provenance.push_back({Origin::natural, id, std::nullopt, std::nullopt});
  return out;
}

std::int64_t next_free_id(const Dataset& data) {
  std::int64_t mx = -1;
  for (std::int64_t id : data.instance_ids) mx = std::max(mx, id);
  return mx + 1;
}

void append_row(AugmentedDataset& aug, const Vector& row, int label,
                std::int64_t id, const SyntheticProvenance& prov) {
  Dataset& d = aug.data;
  d.features.conservativeResize(d.rows() + 1, Eigen::NoChange);
  d.features.row(d.rows() - 1) = row.transpose();
  d.labels.push_back(label);
  d.instance_ids.push_back(id);
  aug.provenance.push_back(prov);
}

Index majority_count(const Dataset& data) {
  auto counts = data.class_counts();
  return *std::max_element(counts.begin(), counts.end());
}

double draw_beta(std::mt19937_64& rng, double alpha) {
  std::gamma_distribution<double> gamma(alpha, 1.0);
  const double a = gamma(rng);
  const double b = gamma(rng);
  return a / (a + b);
}

} // namespace

AugmentedDataset ros(const Dataset& data, std::uint64_t seed) {
  if (data.n_classes < 2) throw std::invalid_argument("ros: needs >= 2 classes");
  AugmentedDataset out = wrap_natural(data);
  std::mt19937_64 rng(seed);
  const Index target = majority_count(data);
  std::int64_t id = next_free_id(data);

  for (int c = 0; c < data.n_classes; ++c) {
    const auto idx = data.indices_of_class(c);
    std::uniform_int_distribution<std::size_t> pick(0, idx.size() - 1);
    for (Index add = target - static_cast<Index>(idx.size()); add > 0; --add) {
      const Index src = idx[pick(rng)];
      append_row(out, data.features.row(src).transpose(), c, id++,
                 {Origin::natural,
                  data.instance_ids[static_cast<std::size_t>(src)],
                  std::nullopt, std::nullopt});
    }
  }
  return out;
}

AugmentedDataset smote(const Dataset& data, Index k, std::uint64_t seed) {
  if (k < 1) throw std::invalid_argument("smote: k must be >= 1");
  AugmentedDataset out = wrap_natural(data);
  std::mt19937_64 rng(seed);
  const Index target = majority_count(data);
  std::int64_t id = next_free_id(data);

  for (int c = 0; c < data.n_classes; ++c) {
    const auto idx = data.indices_of_class(c);
    const Index deficit = target - static_cast<Index>(idx.size());
    if (deficit == 0) continue;
    if (idx.size() < 2)
      throw std::invalid_argument("smote: minority class " + std::to_string(c) +
                                  " has a single instance");

    Matrix cls(static_cast<Index>(idx.size()), data.dims());
    for (std::size_t i = 0; i < idx.size(); ++i)
      cls.row(static_cast<Index>(i)) = data.features.row(idx[i]);
    const Index k_eff = std::min<Index>(k, cls.rows() - 1);
    const auto neighbors = knn_same_set(cls, k_eff, true);

    std::uniform_int_distribution<std::size_t> pick_row(0, idx.size() - 1);
    std::uniform_int_distribution<Index> pick_nn(0, k_eff - 1);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (Index g = 0; g < deficit; ++g) {
      const std::size_t i = pick_row(rng);
      const Index nn = neighbors[i][static_cast<std::size_t>(pick_nn(rng))];
      const double lambda = unit(rng);
      const Vector row = interpolate(cls.row(static_cast<Index>(i)).transpose(),
                                     cls.row(nn).transpose(), lambda);
      append_row(out, row, c, id++,
                 {Origin::synthetic,
                  data.instance_ids[static_cast<std::size_t>(idx[i])],
                  data.instance_ids[static_cast<std::size_t>(
                      idx[static_cast<std::size_t>(nn)])],
                  lambda});
    }
  }
  return out;
}

AugmentedDataset adasyn(const Dataset& data, Index k, std::uint64_t seed,
                        bool* uniform_fallback) {
  if (k < 1) throw std::invalid_argument("adasyn: k must be >= 1");
  if (k >= data.rows()) throw std::invalid_argument("adasyn: k >= row count");
  AugmentedDataset out = wrap_natural(data);
  std::mt19937_64 rng(seed);
  const Index target = majority_count(data);
  std::int64_t id = next_free_id(data);
  if (uniform_fallback) *uniform_fallback = false;

  // hardness neighborhoods come from the full set
  const auto full_nn = knn_same_set(data.features, k, true);

  for (int c = 0; c < data.n_classes; ++c) {
    const auto idx = data.indices_of_class(c);
    const Index deficit = target - static_cast<Index>(idx.size());
    if (deficit == 0) continue;
    if (idx.size() < 2)
      throw std::invalid_argument("adasyn: minority class " +
                                  std::to_string(c) + " has a single instance");

    std::vector<double> hardness(idx.size(), 0.0);
    double hardness_sum = 0.0;
    for (std::size_t i = 0; i < idx.size(); ++i) {
      Index other = 0;
      for (Index nb : full_nn[static_cast<std::size_t>(idx[i])])
        if (data.labels[static_cast<std::size_t>(nb)] != c) ++other;
      hardness[i] = static_cast<double>(other) / static_cast<double>(k);
      hardness_sum += hardness[i];
    }
    if (hardness_sum == 0.0) {
      if (uniform_fallback) *uniform_fallback = true;
      std::fill(hardness.begin(), hardness.end(), 1.0);
      hardness_sum = static_cast<double>(idx.size());
    }

    // largest-remainder rounding keeps the class exactly balanced
    std::vector<Index> alloc(idx.size(), 0);
    std::vector<std::pair<double, std::size_t>> remainders;
    Index allocated = 0;
    for (std::size_t i = 0; i < idx.size(); ++i) {
      const double share =
          hardness[i] / hardness_sum * static_cast<double>(deficit);
      alloc[i] = static_cast<Index>(std::floor(share));
      allocated += alloc[i];
      remainders.push_back({share - std::floor(share), i});
    }
    std::stable_sort(remainders.begin(), remainders.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    for (Index r = 0; r < deficit - allocated; ++r)
      alloc[remainders[static_cast<std::size_t>(r)].second]++;

    Matrix cls(static_cast<Index>(idx.size()), data.dims());
    for (std::size_t i = 0; i < idx.size(); ++i)
      cls.row(static_cast<Index>(i)) = data.features.row(idx[i]);
    const Index k_eff = std::min<Index>(k, cls.rows() - 1);
    const auto same_nn = knn_same_set(cls, k_eff, true);

    std::uniform_int_distribution<Index> pick_nn(0, k_eff - 1);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (std::size_t i = 0; i < idx.size(); ++i) {
      for (Index g = 0; g < alloc[i]; ++g) {
        const Index nn = same_nn[i][static_cast<std::size_t>(pick_nn(rng))];
        const double lambda = unit(rng);
        const Vector row = interpolate(cls.row(static_cast<Index>(i)).transpose(),
                                       cls.row(nn).transpose(), lambda);
        append_row(out, row, c, id++,
                   {Origin::synthetic,
                    data.instance_ids[static_cast<std::size_t>(idx[i])],
                    data.instance_ids[static_cast<std::size_t>(
                        idx[static_cast<std::size_t>(nn)])],
                    lambda});
      }
    }
  }
  return out;
}

AugmentedDataset remix(const Dataset& data, double alpha, std::uint64_t seed) {
  if (alpha <= 0.0) throw std::invalid_argument("remix: alpha must be > 0");
  if (data.n_classes != 2)
    throw std::invalid_argument("remix: binary datasets only");
  std::mt19937_64 rng(seed);

  const auto counts = data.class_counts();
  const int maj = counts[0] >= counts[1] ? 0 : 1;
  const int min_c = 1 - maj;
  const auto maj_idx_all = data.indices_of_class(maj);
  const auto min_idx = data.indices_of_class(min_c);

  // under-sample the majority to the geometric mean of the class counts
  const Index g = static_cast<Index>(std::llround(
      std::sqrt(static_cast<double>(counts[0]) * static_cast<double>(counts[1]))));
  std::vector<Index> maj_idx = maj_idx_all;
  std::shuffle(maj_idx.begin(), maj_idx.end(), rng);
  maj_idx.resize(static_cast<std::size_t>(g));
  std::sort(maj_idx.begin(), maj_idx.end());

  std::vector<Index> keep = maj_idx;
  keep.insert(keep.end(), min_idx.begin(), min_idx.end());
  std::sort(keep.begin(), keep.end());

  AugmentedDataset out = wrap_natural(subset(data, keep));
  std::int64_t id = next_free_id(data);

  Matrix soft = Matrix::Zero(out.data.rows(), 2);
  for (Index i = 0; i < out.data.rows(); ++i)
    soft(i, out.data.labels[static_cast<std::size_t>(i)]) = 1.0;

  // class mass starts at (g, n_min); synthetic rows lean their soft label
  // toward the minority until the masses meet, the last draw clamped so the
  // column sums land exactly on balance
  double mass_maj = static_cast<double>(g);
  double mass_min = static_cast<double>(min_idx.size());

  std::uniform_int_distribution<std::size_t> pick_maj(0, maj_idx.size() - 1);
  std::uniform_int_distribution<std::size_t> pick_min(0, min_idx.size() - 1);
  std::vector<std::array<double, 2>> synth_soft;
  Index n_synth = 0;
  const Index synth_cap = 10 * g + 10;
  while (mass_maj - mass_min > 1e-9 && n_synth < synth_cap) {
    const Index a = maj_idx[pick_maj(rng)];
    const Index b = min_idx[pick_min(rng)];
    double lam_min = draw_beta(rng, alpha); // coefficient on the minority parent
    if (lam_min < 0.5) lam_min = 1.0 - lam_min;
    // a row shifts the mass difference by 2*lambda - 1
    const double deficit = mass_maj - mass_min;
    if (2.0 * lam_min - 1.0 > deficit) lam_min = 0.5 * (1.0 + deficit);
    const Vector row = interpolate(data.features.row(a).transpose(),
                                   data.features.row(b).transpose(), lam_min);
    const int hard = lam_min >= 0.5 ? min_c : maj;
    append_row(out, row, hard, id++,
               {Origin::synthetic, data.instance_ids[static_cast<std::size_t>(a)],
                data.instance_ids[static_cast<std::size_t>(b)], lam_min});
    synth_soft.push_back({0.0, 0.0});
    synth_soft.back()[static_cast<std::size_t>(maj)] = 1.0 - lam_min;
    synth_soft.back()[static_cast<std::size_t>(min_c)] = lam_min;
    mass_maj += 1.0 - lam_min;
    mass_min += lam_min;
    ++n_synth;
  }

  soft.conservativeResize(out.data.rows(), 2);
  for (Index s = 0; s < n_synth; ++s) {
    const Index row = out.data.rows() - n_synth + s;
    soft(row, 0) = synth_soft[static_cast<std::size_t>(s)][0];
    soft(row, 1) = synth_soft[static_cast<std::size_t>(s)][1];
  }
  out.soft_labels = std::move(soft);
  return out;
}

ClassWeights class_weights(const Dataset& data) {
  if (data.n_classes < 2)
    throw std::invalid_argument("class_weights: needs >= 2 classes");
  const auto counts = data.class_counts();
  ClassWeights cw;
  cw.weights.resize(data.n_classes);
  const double n = static_cast<double>(data.rows());
  for (int c = 0; c < data.n_classes; ++c)
    cw.weights(c) = n / (static_cast<double>(data.n_classes) *
                         static_cast<double>(counts[static_cast<std::size_t>(c)]));
  return cw;
}

Vector replay_synthetic(const Dataset& source, const SyntheticProvenance& p) {
  if (p.origin != Origin::synthetic || !p.parent_b || !p.lambda)
    throw std::invalid_argument("replay: provenance is not synthetic");
  std::unordered_map<std::int64_t, Index> by_id;
  for (Index i = 0; i < source.rows(); ++i)
    by_id[source.instance_ids[static_cast<std::size_t>(i)]] = i;
  const auto a = by_id.find(p.parent_a);
  const auto b = by_id.find(*p.parent_b);
  if (a == by_id.end() || b == by_id.end())
    throw std::invalid_argument("replay: parent id not present in source");
  return interpolate(source.features.row(a->second).transpose(),
                     source.features.row(b->second).transpose(), *p.lambda);
}

} // namespace imbaug
