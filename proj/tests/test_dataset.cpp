#include "imbaug/dataset.hpp"

#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <random>
#include <set>

using namespace imbaug;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& contents) {
    static int counter = 0;
    path = "imbaug_test_" + std::to_string(counter++) + ".csv";
    std::ofstream out(path);
    out << contents;
  }
  ~TempFile() { std::remove(path.c_str()); }
};

} // namespace

TEST_CASE("load_csv parses a minimal two-row file") {
  TempFile f("1.0,2.0,0\n3.0,4.0,1\n");
  const auto res = load_csv(f.path, "2");
  CHECK(res.data.rows() == 2);
  CHECK(res.data.dims() == 2);
  CHECK(res.data.n_classes == 2);
  CHECK(res.data.labels[0] == 0);
  CHECK(res.data.labels[1] == 1);
  CHECK_FALSE(res.had_header);
}

TEST_CASE("load_csv handles headers and name-addressed label columns") {
  TempFile f("a,b,target\n1,2,yes\n3,4,no\n5,6,yes\n");
  const auto res = load_csv(f.path, "target");
  CHECK(res.had_header);
  CHECK(res.label_index == 2);
  CHECK(res.data.n_classes == 2);
  // remap follows first appearance
  CHECK(res.original_labels == std::vector<std::string>{"yes", "no"});
  CHECK(res.data.labels == std::vector<int>{0, 1, 0});
  CHECK(res.feature_names == std::vector<std::string>{"a", "b"});
}

TEST_CASE("load_csv rejects degenerate and malformed inputs") {
  SUBCASE("single-class label column") {
    TempFile f("1,0\n2,0\n");
    CHECK_THROWS(load_csv(f.path, "1"));
  }
  SUBCASE("missing file") { CHECK_THROWS(load_csv("no_such_file.csv", "0")); }
  SUBCASE("unparseable cell is reported with position") {
    TempFile f("1,0\nx,1\n");
    CHECK_THROWS_WITH_AS(load_csv(f.path, "1"),
                         doctest::Contains("row 1"), std::runtime_error);
  }
  SUBCASE("missing value is a hard error") {
    TempFile f("1,2,0\n1,,1\n");
    CHECK_THROWS(load_csv(f.path, "2"));
  }
}

TEST_CASE("fit_standardizer handles constant and symmetric columns") {
  Dataset d;
  d.features.resize(2, 2);
  d.features << 5.0, -1.0, 5.0, 1.0;
  d.labels = {0, 1};
  d.instance_ids = {0, 1};
  d.n_classes = 2;
  const auto p = fit_standardizer(d);
  CHECK(p.mean(0) == doctest::Approx(5.0));
  CHECK(p.std_dev(0) == 1.0); // floored
  CHECK(p.mean(1) == doctest::Approx(0.0));
  CHECK(p.std_dev(1) == doctest::Approx(1.0));
}

TEST_CASE("fit_standardizer matches a two-pass scalar oracle") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g(2.0, 3.0);
  Dataset d;
  d.features.resize(100, 3);
  for (Index i = 0; i < 100; ++i) {
    for (Index j = 0; j < 3; ++j) d.features(i, j) = g(rng);
    d.labels.push_back(static_cast<int>(i % 2));
    d.instance_ids.push_back(i);
  }
  d.n_classes = 2;
  const auto p = fit_standardizer(d);
  for (Index j = 0; j < 3; ++j) {
    double mean = 0.0;
    for (Index i = 0; i < 100; ++i) mean += d.features(i, j);
    mean /= 100.0;
    double var = 0.0;
    for (Index i = 0; i < 100; ++i)
      var += (d.features(i, j) - mean) * (d.features(i, j) - mean);
    var /= 100.0;
    CHECK(p.mean(j) == doctest::Approx(mean).epsilon(1e-12));
    CHECK(p.std_dev(j) == doctest::Approx(std::sqrt(var)).epsilon(1e-12));
  }

  SUBCASE("apply on held-out rows equals the scalar computation") {
    Dataset held = d;
    held.features.setRandom();
    const auto scaled = apply_standardizer(p, held);
    for (Index i = 0; i < 5; ++i)
      for (Index j = 0; j < 3; ++j)
        CHECK(scaled.features(i, j) ==
              doctest::Approx((held.features(i, j) - p.mean(j)) / p.std_dev(j))
                  .epsilon(1e-12));
  }

  SUBCASE("standardize-then-refit is idempotent") {
    const auto scaled = apply_standardizer(p, d);
    const auto p2 = fit_standardizer(scaled);
    for (Index j = 0; j < 3; ++j) {
      CHECK(std::abs(p2.mean(j)) < 1e-9);
      CHECK(std::abs(p2.std_dev(j) - 1.0) < 1e-9);
    }
  }
}

TEST_CASE("apply_standardizer identity and dimension mismatch") {
  Dataset d;
  d.features.resize(2, 2);
  d.features << 1, 2, 3, 4;
  d.labels = {0, 1};
  d.instance_ids = {0, 1};
  d.n_classes = 2;
  ScalerParams identity{Vector::Zero(2), Vector::Ones(2)};
  CHECK(apply_standardizer(identity, d).features == d.features);
  ScalerParams wrong{Vector::Zero(3), Vector::Ones(3)};
  CHECK_THROWS(apply_standardizer(wrong, d));
}

TEST_CASE("stratified_splits keeps proportions, partitions, determinism") {
  const auto d = make_gaussian_imbalanced(1000, 100, 2, 3.0, 11);
  const auto plan = stratified_splits(d, 5, 0.7, 42);
  for (int r = 0; r < 5; ++r) {
    Index maj = 0, minr = 0;
    for (Index i : plan.train_indices[r])
      (d.labels[static_cast<std::size_t>(i)] == 0 ? maj : minr)++;
    CHECK(std::abs(maj - 700) <= 1);
    CHECK(std::abs(minr - 70) <= 1);

    std::set<Index> all(plan.train_indices[r].begin(),
                        plan.train_indices[r].end());
    all.insert(plan.test_indices[r].begin(), plan.test_indices[r].end());
    CHECK(static_cast<Index>(all.size()) == d.rows());
    CHECK(static_cast<Index>(plan.train_indices[r].size() +
                             plan.test_indices[r].size()) == d.rows());
  }
  const auto plan2 = stratified_splits(d, 5, 0.7, 42);
  CHECK(plan.train_indices == plan2.train_indices);
  CHECK(plan.test_indices == plan2.test_indices);

  Dataset tiny = d;
  tiny.features.conservativeResize(3, Eigen::NoChange);
  tiny.labels = {0, 0, 1};
  tiny.instance_ids = {0, 1, 2};
  CHECK_THROWS(stratified_splits(tiny, 1, 0.7, 1));
}

TEST_CASE("make_gaussian_imbalanced and imbalance_ratio") {
  const auto d = make_gaussian_imbalanced(1000, 100, 2, 4.0, 3);
  CHECK(d.rows() == 1100);
  CHECK(imbalance_ratio(d) == doctest::Approx(10.0));

  Dataset balanced = make_gaussian_imbalanced(50, 50, 2, 1.0, 3);
  CHECK(imbalance_ratio(balanced) == doctest::Approx(1.0));

  Dataset skew;
  skew.features = Matrix::Zero(99, 1);
  skew.n_classes = 2;
  for (Index i = 0; i < 99; ++i) {
    skew.labels.push_back(i < 90 ? 0 : 1);
    skew.instance_ids.push_back(i);
  }
  CHECK(imbalance_ratio(skew) == doctest::Approx(10.0));
}

TEST_CASE("imbalance_ratio is always >= 1") {
  for (std::uint64_t s = 0; s < 5; ++s) {
    const auto d = make_gaussian_imbalanced(10 + s, 40 - s, 3, 2.0, s);
    CHECK(imbalance_ratio(d) >= 1.0);
  }
}
