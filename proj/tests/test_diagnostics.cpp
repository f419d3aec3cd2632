#include "imbaug/dataset.hpp"
#include "imbaug/diagnostics.hpp"
#include "imbaug/resampling.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

using namespace imbaug;

TEST_CASE("frobenius norm against a scalar-loop oracle") {
  CHECK(frobenius_norm(Matrix::Zero(3, 3)) == 0.0);
  CHECK(frobenius_norm(Matrix::Identity(2, 2)) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));

  std::mt19937_64 rng(2);
  std::normal_distribution<double> g;
  Matrix W(3, 4);
  for (Index i = 0; i < W.size(); ++i) W(i / 4, i % 4) = g(rng);
  double sum = 0.0;
  for (Index i = 0; i < 3; ++i)
    for (Index j = 0; j < 4; ++j) sum += W(i, j) * W(i, j);
  CHECK(frobenius_norm(W) == doctest::Approx(std::sqrt(sum)).epsilon(1e-12));
}

TEST_CASE("frobenius norm homogeneity and triangle inequality") {
  std::mt19937_64 rng(6);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> scale(-5.0, 5.0);
  for (int trial = 0; trial < 100; ++trial) {
    Matrix A(4, 3), B(4, 3);
    for (Index i = 0; i < A.size(); ++i) {
      A(i / 3, i % 3) = g(rng);
      B(i / 3, i % 3) = g(rng);
    }
    const double c = scale(rng);
    CHECK(frobenius_norm(Matrix(c * A)) ==
          doctest::Approx(std::abs(c) * frobenius_norm(A)).epsilon(1e-12));
    CHECK(frobenius_norm(Matrix(A + B)) <=
          frobenius_norm(A) + frobenius_norm(B) + 1e-12);
  }
}

TEST_CASE("weight_diff_pct arithmetic") {
  Matrix base(1, 2), aug(1, 2);
  base << 1.0, -2.0;

  SUBCASE("identical tensors") {
    CHECK(weight_diff_pct(base, base).mean_pct == 0.0);
  }
  SUBCASE("uniform doubling") {
    aug = 2.0 * base;
    CHECK(weight_diff_pct(base, aug).mean_pct == doctest::Approx(1.0));
  }
  SUBCASE("two-entry example") {
    aug << 2.0, -1.0;
    CHECK(weight_diff_pct(base, aug).mean_pct == doctest::Approx(0.75));
  }
  SUBCASE("near-zero base entries are excluded and counted") {
    Matrix b2(1, 3), a2(1, 3);
    b2 << 1.0, 0.0, -2.0;
    a2 << 2.0, 5.0, -1.0;
    const auto diff = weight_diff_pct(b2, a2);
    CHECK(diff.excluded == 1);
    CHECK(diff.mean_pct == doctest::Approx(0.75));
  }
  SUBCASE("shape mismatch throws") {
    CHECK_THROWS(weight_diff_pct(base, Matrix::Zero(2, 2)));
  }
  SUBCASE("non-negative, zero iff equal on included entries") {
    std::mt19937_64 rng(4);
    std::normal_distribution<double> g;
    Matrix A(3, 3), B(3, 3);
    for (Index i = 0; i < 9; ++i) {
      A(i / 3, i % 3) = g(rng) + 2.0;
      B(i / 3, i % 3) = g(rng);
    }
    CHECK(weight_diff_pct(A, B).mean_pct > 0.0);
    CHECK(weight_diff_pct(A, A).mean_pct == 0.0);
  }
}

TEST_CASE("topk_ce selects by mean absolute classification embedding") {
  LinearModel m;
  m.weights = Vector::Zero(5);

  SUBCASE("one-hot weight puts that feature first for both classes") {
    m.weights(3) = 2.0;
    Matrix X(4, 5);
    X.setRandom();
    X.col(3).setConstant(1.0);
    const std::vector<int> labels = {0, 0, 1, 1};
    const auto rep = topk_ce(m, X, labels, 2, 1);
    CHECK(rep.top_sets[0] == std::vector<Index>{3});
    CHECK(rep.top_sets[1] == std::vector<Index>{3});
  }

  SUBCASE("hand-computed CE order on a 5-feature fixture") {
    m.weights << 1.0, -2.0, 0.5, 3.0, 0.0;
    Matrix X(2, 5);
    X << 1.0, 1.0, 4.0, -1.0, 9.0,
         3.0, -1.0, 2.0, 0.5, 9.0;
    const std::vector<int> labels = {0, 0};
    // scalar-loop oracle
    Vector mu = Vector::Zero(5);
    for (Index i = 0; i < 2; ++i)
      for (Index j = 0; j < 5; ++j) mu(j) += std::abs(X(i, j) * m.weights(j));
    mu /= 2.0;
    std::vector<Index> order(5);
    std::iota(order.begin(), order.end(), Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Index a, Index b) { return mu(a) > mu(b); });

    const auto rep = topk_ce(m, X, labels, 1, 5);
    CHECK(rep.top_sets[0] == order);
  }

  SUBCASE("ordering is invariant to row permutation") {
    m.weights << 0.3, -1.2, 2.0, 0.7, -0.1;
    Matrix X(6, 5);
    X.setRandom();
    std::vector<int> labels = {0, 1, 0, 1, 0, 1};
    const auto rep1 = topk_ce(m, X, labels, 2, 3);
    Matrix X2 = X;
    X2.row(0).swap(X2.row(4)); // both label 0
    const auto rep2 = topk_ce(m, X2, labels, 2, 3);
    CHECK(rep1.top_sets == rep2.top_sets);
  }

  SUBCASE("K larger than feature count throws") {
    Matrix X(1, 5);
    X.setZero();
    CHECK_THROWS(topk_ce(m, X, {0}, 2, 6));
  }
}

TEST_CASE("topk_overlap") {
  TopKReport a, b;
  a.K = b.K = 10;
  a.top_sets = {{0, 1, 2, 3, 4, 5, 6, 7, 8, 9}, {0, 1, 2, 3, 4, 5, 6, 7, 8, 9}};
  b.top_sets = a.top_sets;
  CHECK(topk_overlap(a, b) == doctest::Approx(1.0));

  // class 0 shares 4/10, class 1 shares 6/10 -> 0.5
  b.top_sets[0] = {0, 1, 2, 3, 20, 21, 22, 23, 24, 25};
  b.top_sets[1] = {0, 1, 2, 3, 4, 5, 30, 31, 32, 33};
  CHECK(topk_overlap(a, b) == doctest::Approx(0.5));
  CHECK(topk_overlap(a, b) == topk_overlap(b, a));

  b.top_sets[0] = {10, 11, 12, 13, 14, 15, 16, 17, 18, 19};
  b.top_sets[1] = {10, 11, 12, 13, 14, 15, 16, 17, 18, 19};
  CHECK(topk_overlap(a, b) == doctest::Approx(0.0));

  TopKReport wrong = b;
  wrong.K = 5;
  CHECK_THROWS(topk_overlap(a, wrong));
}

TEST_CASE("topk_input_grad per-instance sets match a finite-difference oracle") {
  TrainConfig cfg;
  cfg.seed = 77;
  const auto m = init_mlp(10, cfg);
  Matrix X(4, 10);
  X.setRandom();
  const auto rep = topk_input_grad(m, X, {3, 0.0});
  REQUIRE(rep.top_sets.size() == 4);

  const double h = 1e-5;
  for (Index i = 0; i < 4; ++i) {
    const Matrix z = m.logits(Matrix(X.row(i)));
    const Index cls = z(0, 0) >= z(0, 1) ? 0 : 1;
    Vector mags(10);
    for (Index j = 0; j < 10; ++j) {
      Vector xp = X.row(i).transpose(), xm = xp;
      xp(j) += h;
      xm(j) -= h;
      mags(j) = std::abs((m.logits(xp.transpose())(0, cls) -
                          m.logits(xm.transpose())(0, cls)) /
                         (2.0 * h));
    }
    std::vector<Index> order(10);
    std::iota(order.begin(), order.end(), Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Index a, Index b) { return mags(a) > mags(b); });
    CHECK(rep.top_sets[static_cast<std::size_t>(i)] ==
          std::vector<Index>(order.begin(), order.begin() + 3));
  }
}

TEST_CASE("dead network ties break to the lowest indices") {
  TrainConfig cfg;
  auto m = init_mlp(6, cfg);
  m.weights[0].setZero();
  Matrix X(1, 6);
  X.setRandom();
  const auto rep = topk_input_grad(m, X, {3, 0.0});
  CHECK(rep.top_sets[0] == std::vector<Index>{0, 1, 2});
}

TEST_CASE("aggregate mode over a single instance equals its set") {
  TrainConfig cfg;
  cfg.seed = 5;
  const auto m = init_mlp(8, cfg);
  Matrix X(1, 8);
  X.setRandom();
  const auto inst = topk_input_grad(m, X, {0, 0.25}); // ceil(0.25*8) = 2
  CHECK(inst.K == 2);
  const auto agg = topk_input_grad_aggregate(inst, {0}, 1, 8);
  std::vector<Index> sorted_inst = inst.top_sets[0];
  std::sort(sorted_inst.begin(), sorted_inst.end());
  std::vector<Index> sorted_agg = agg.top_sets[0];
  std::sort(sorted_agg.begin(), sorted_agg.end());
  CHECK(sorted_inst == sorted_agg);
}

TEST_CASE("sv_census identities and synthetic tracking") {
  const auto d = make_gaussian_imbalanced(150, 30, 3, 1.5, 19);
  KernelSpec k;
  k.type = KernelSpec::Type::rbf;
  const auto base =
      train_svm(d.features, d.labels, 1.0, k, nullptr, d.instance_ids);

  AugmentedDataset plain;
  plain.data = d;
  for (std::int64_t id : d.instance_ids)
    plain.provenance.push_back({Origin::natural, id, std::nullopt, std::nullopt});

  SUBCASE("base vs itself") {
    const auto c = sv_census(base, plain, &base);
    CHECK(c.sv_multiple_vs_base == doctest::Approx(1.0));
    CHECK(c.new_sv_ratio == 0.0);
    CHECK(c.synthetic_sv_ratio == 0.0);
  }

  SUBCASE("dual sums balance per class") {
    const auto c = sv_census(base, plain, nullptr);
    REQUIRE(c.dual_sum_per_class.size() == 2);
    CHECK(std::abs(std::abs(c.dual_sum_per_class[0]) -
                   std::abs(c.dual_sum_per_class[1])) < 1e-6);
  }

  SUBCASE("smote-trained model reports synthetic SVs") {
    const auto aug = smote(d, 5, 23);
    const auto m = train_svm(aug.data.features, aug.data.labels, 1.0, k,
                             nullptr, aug.data.instance_ids);
    const auto c = sv_census(m, aug, &base);
    CHECK(c.synthetic_sv_ratio > 0.0);
    CHECK(c.sv_multiple_vs_base > 1.0);
    // ratios always in range
    CHECK(c.synthetic_sv_ratio <= 1.0);
    CHECK(c.new_sv_ratio >= 0.0);
    CHECK(c.new_sv_ratio <= 1.0);
  }

  SUBCASE("mismatched training set throws") {
    Dataset other = make_gaussian_imbalanced(10, 5, 3, 1.0, 1);
    AugmentedDataset wrong;
    wrong.data = other;
    for (std::int64_t id : other.instance_ids)
      wrong.provenance.push_back(
          {Origin::natural, id, std::nullopt, std::nullopt});
    wrong.data.instance_ids.assign(other.instance_ids.size(), 0);
    for (std::size_t i = 0; i < wrong.data.instance_ids.size(); ++i)
      wrong.data.instance_ids[i] = 1000 + static_cast<std::int64_t>(i);
    CHECK_THROWS(sv_census(base, wrong, nullptr));
  }
}
