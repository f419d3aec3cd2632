#include "imbaug/metrics.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace imbaug;

TEST_CASE("balanced accuracy basics") {
  CHECK(balanced_accuracy({0, 1, 0, 1}, {0, 1, 0, 1}) == doctest::Approx(1.0));
  CHECK(balanced_accuracy({0, 0, 0, 1}, {0, 0, 0, 0}) == doctest::Approx(0.5));
  CHECK(balanced_accuracy({0, 0, 1, 1}, {0, 1, 1, 1}) == doctest::Approx(0.75));
  CHECK_THROWS(balanced_accuracy({0, 1}, {0}));
}

TEST_CASE("macro F1 basics") {
  CHECK(macro_f1({0, 1, 0, 1}, {0, 1, 0, 1}) == doctest::Approx(1.0));
  // class0 F1 = 0.667, class1 F1 = 0.8
  CHECK(macro_f1({0, 0, 1, 1}, {0, 1, 1, 1}) ==
        doctest::Approx((2.0 / 3.0 + 0.8) / 2.0).epsilon(1e-9));
  // never predicting class 1 -> its F1 contributes 0
  CHECK(macro_f1({0, 0, 1, 1}, {0, 0, 0, 0}) ==
        doctest::Approx(0.5 * (2.0 * 0.5 / 1.5)));
}

TEST_CASE("metrics are invariant to label permutation and row order") {
  std::mt19937_64 rng(3);
  std::vector<int> truth, pred;
  std::uniform_int_distribution<int> coin(0, 1);
  for (int i = 0; i < 200; ++i) {
    truth.push_back(coin(rng));
    pred.push_back(coin(rng));
  }
  const double bac = balanced_accuracy(truth, pred);
  const double f1 = macro_f1(truth, pred);
  CHECK(bac >= 0.0);
  CHECK(bac <= 1.0);
  CHECK(f1 >= 0.0);
  CHECK(f1 <= 1.0);

  // flip 0<->1 consistently in both vectors
  auto flip = [](std::vector<int> v) {
    for (int& y : v) y = 1 - y;
    return v;
  };
  CHECK(balanced_accuracy(flip(truth), flip(pred)) == doctest::Approx(bac));
  CHECK(macro_f1(flip(truth), flip(pred)) == doctest::Approx(f1));

  // permute instance order
  std::vector<std::size_t> order(truth.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<int> t2, p2;
  for (std::size_t i : order) {
    t2.push_back(truth[i]);
    p2.push_back(pred[i]);
  }
  CHECK(balanced_accuracy(t2, p2) == doctest::Approx(bac));
  CHECK(macro_f1(t2, p2) == doctest::Approx(f1));
}

TEST_CASE("uniform random predictor converges to BAC 0.5") {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> coin(0, 1);
  std::vector<int> truth, pred;
  for (int i = 0; i < 10000; ++i) {
    truth.push_back(i < 9000 ? 0 : 1); // imbalanced truth on purpose
    pred.push_back(coin(rng));
  }
  CHECK(balanced_accuracy(truth, pred) == doctest::Approx(0.5).epsilon(0.04));
}

TEST_CASE("confusion matrix totals") {
  const auto cm = ConfusionMatrix::from_labels({0, 0, 1, 1}, {0, 1, 1, 1}, 2);
  CHECK(cm.counts.sum() == 4);
  CHECK(cm.counts(0, 0) == 1);
  CHECK(cm.counts(0, 1) == 1);
  CHECK(cm.counts(1, 1) == 2);
}
