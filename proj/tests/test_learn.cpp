#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "hddist/distance.hpp"
#include "hddist/error.hpp"
#include "hddist/evaluate.hpp"
#include "hddist/learn.hpp"
#include "oracles.hpp"

using namespace hddist;

namespace {

CondensedDistanceMatrix line_distances(const std::vector<double>& pts) {
  std::vector<std::vector<double>> rows;
  for (double v : pts) rows.push_back({v});
  return pairwise(DataMatrix::from_rows(rows), AggregationOrder(1));
}

CondensedDistanceMatrix random_condensed(std::mt19937_64& gen, std::size_t n, bool dyadic) {
  std::vector<double> e(condensed_size(n));
  std::uniform_int_distribution<int> grid(0, 15);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  for (auto& v : e) v = dyadic ? grid(gen) / 8.0 : u(gen);
  return CondensedDistanceMatrix(n, std::move(e));
}

bool swap_optimal(const CondensedDistanceMatrix& d, const std::vector<std::size_t>& medoids, double objective) {
  std::set<std::size_t> in(medoids.begin(), medoids.end());
  for (std::size_t m = 0; m < medoids.size(); ++m) {
    for (std::size_t h = 0; h < d.n(); ++h) {
      if (in.count(h)) continue;
      auto trial = medoids;
      trial[m] = h;
      if (medoid_cost(d, trial) < objective - 1e-12 * std::max(1.0, objective)) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("pam: four points on a line") {
  const auto d = line_distances({0, 1, 10, 11});
  const auto c = pam(d, 2);
  REQUIRE(c.objective);
  CHECK(*c.objective == 2.0);
  CHECK(c.labels.labels() == std::vector<int>{1, 1, 2, 2});
  CHECK(oracle::pam_brute_force(d.entries(), 4, 2) == 2.0);
  CHECK(c.medoids.size() == 2);
  CHECK(medoid_cost(d, c.medoids) == 2.0);
}

TEST_CASE("pam: k = n-1 leaves one pair") {
  const auto d = line_distances({0, 3, 7, 8, 20});
  const auto c = pam(d, 4);
  CHECK(*c.objective == 1.0);
  CHECK(c.labels[2] == c.labels[3]);
  std::set<int> distinct(c.labels.labels().begin(), c.labels.labels().end());
  CHECK(distinct.size() == 4);
}

TEST_CASE("pam: identical objects are co-clustered") {
  const auto d = line_distances({5, 5, 100, 101, 102});
  const auto c = pam(d, 2);
  CHECK(c.labels[0] == c.labels[1]);
  CHECK(c.labels[0] != c.labels[2]);
}

TEST_CASE("pam: argument checks") {
  const auto d = line_distances({0, 1, 2});
  CHECK_THROWS_AS(pam(d, 1), UsageError);
  CHECK_THROWS_AS(pam(d, 3), UsageError);
}

namespace {

// Checks shared by every PAM instance; returns whether the global optimum was hit.
bool check_pam_instance(const CondensedDistanceMatrix& d, std::size_t k) {
  const std::size_t n = d.n();
  const auto c = pam(d, k);
  REQUIRE(c.objective);
  CHECK(*c.objective == doctest::Approx(medoid_cost(d, c.medoids)).epsilon(1e-14));
  CHECK(swap_optimal(d, c.medoids, *c.objective));
  for (std::size_t i = 0; i < n; ++i) {
    const auto own = c.medoids[static_cast<std::size_t>(c.labels[i] - 1)];
    for (auto m : c.medoids) CHECK(d(i, own) <= d(i, m));
  }
  for (std::size_t ci = 0; ci < c.medoids.size(); ++ci) CHECK(c.labels[c.medoids[ci]] == static_cast<int>(ci + 1));
  const double best = oracle::pam_brute_force(d.entries(), n, k);
  CHECK(*c.objective >= best - 1e-12);
  return *c.objective <= best + 1e-12;
}

}  // namespace

TEST_CASE("pam on random point clouds: swap-optimal, never below the optimum") {
  std::mt19937_64 gen(42);
  std::normal_distribution<double> z(0.0, 1.0);
  int total = 0, optimal = 0;
  for (int rep = 0; rep < 400; ++rep) {
    const std::size_t n = 4 + rep % 5;
    const std::size_t k = 2 + rep % 2;
    const std::size_t dim = 1 + (rep / 10) % 4;
    std::vector<std::vector<double>> rows(n, std::vector<double>(dim));
    for (auto& r : rows)
      for (auto& v : r) v = z(gen);
    const auto d = pairwise(DataMatrix::from_rows(rows), rep % 3 == 0 ? AggregationOrder(1) : AggregationOrder(2));
    ++total;
    if (check_pam_instance(d, k)) ++optimal;
  }
  // Gaps are counted, not failed; the acceptance binary holds the rate threshold.
  MESSAGE("pam reached the global optimum on " << optimal << "/" << total << " point clouds");
}

TEST_CASE("pam on arbitrary dissimilarities: swap-optimal, never below the optimum") {
  std::mt19937_64 gen(43);
  int total = 0, optimal = 0;
  for (int rep = 0; rep < 400; ++rep) {
    const std::size_t n = 4 + rep % 5;
    const auto d = random_condensed(gen, n, rep % 2 == 0);
    ++total;
    if (check_pam_instance(d, 2 + rep % 2)) ++optimal;
  }
  // No threshold here: without the triangle inequality local optima are common.
  MESSAGE("pam reached the global optimum on " << optimal << "/" << total << " non-metric instances");
}

TEST_CASE("linkage: three points on a line") {
  const auto d = line_distances({0, 1, 10});
  const auto comp = linkage(d, Linkage::complete);
  REQUIRE(comp.merges.size() == 2);
  CHECK(comp.merges[0] == Merge{0, 1, 1.0, 2});
  CHECK(comp.merges[1] == Merge{2, 3, 10.0, 3});
  const auto avg = linkage(d, Linkage::average);
  CHECK(avg.merges[1].height == 9.5);
  CHECK(cut_tree(comp, 2).labels() == std::vector<int>{1, 1, 2});
  CHECK(cut_tree(comp, 1).labels() == std::vector<int>{1, 1, 1});
  CHECK(cut_tree(comp, 3).labels() == std::vector<int>{1, 2, 3});
  CHECK_THROWS_AS(cut_tree(comp, 0), UsageError);
  CHECK_THROWS_AS(cut_tree(comp, 4), UsageError);
}

TEST_CASE("linkage: n = 2 and label order") {
  const auto two = linkage(CondensedDistanceMatrix(2, {3.5}), Linkage::average);
  REQUIRE(two.merges.size() == 1);
  CHECK(two.merges[0].height == 3.5);
  // Components are numbered by their smallest member.
  const auto d = line_distances({10, 0, 1});
  CHECK(cut_tree(linkage(d, Linkage::complete), 2).labels() == std::vector<int>{1, 2, 2});
  CHECK_THROWS_AS(linkage(CondensedDistanceMatrix(1), Linkage::complete), UsageError);
}

TEST_CASE("linkage matches the naive oracle on 200 random instances") {
  std::mt19937_64 gen(9);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = 2 + static_cast<std::size_t>(rep) % 29;
    const bool dyadic = rep % 2 == 0;  // heavy ties on an exact grid
    const auto d = random_condensed(gen, n, dyadic);
    for (bool complete : {true, false}) {
      const auto got = linkage(d, complete ? Linkage::complete : Linkage::average);
      const auto want = oracle::naive_linkage(d.entries(), n, complete);
      REQUIRE(got.merges.size() == want.size());
      for (std::size_t s = 0; s < want.size(); ++s) {
        REQUIRE(got.merges[s].left == want[s].left);
        REQUIRE(got.merges[s].right == want[s].right);
        if (complete || dyadic)
          REQUIRE(got.merges[s].height == want[s].height);
        else
          REQUIRE(got.merges[s].height == doctest::Approx(want[s].height).epsilon(1e-12));
      }
      // Monotone linkages: heights never decrease.
      for (std::size_t s = 1; s < want.size(); ++s) REQUIRE(got.merges[s].height >= got.merges[s - 1].height);
      CHECK(cut_tree(got, n).labels().size() == n);
      const auto singles = cut_tree(got, n);
      std::set<int> distinct(singles.labels().begin(), singles.labels().end());
      CHECK(distinct.size() == n);
    }
  }
}

TEST_CASE("knn examples and tie arms") {
  SUBCASE("distance zero, k = 1") {
    CrossDistanceMatrix dx(1, 3);
    dx(0, 0) = 4, dx(0, 1) = 0, dx(0, 2) = 1;
    CHECK(knn_classify(dx, LabelVector::from_complete({1, 2, 1}), 1)[0] == 2);
  }
  SUBCASE("majority") {
    CrossDistanceMatrix dx(1, 4);
    dx(0, 0) = 1, dx(0, 1) = 2, dx(0, 2) = 3, dx(0, 3) = 0.5;
    CHECK(knn_classify(dx, LabelVector::from_complete({1, 1, 2, 2}), 3)[0] == 1);
  }
  SUBCASE("vote tie: smaller summed distance wins") {
    CrossDistanceMatrix dx(1, 3);
    dx(0, 0) = 2, dx(0, 1) = 1, dx(0, 2) = 9;
    CHECK(knn_classify(dx, LabelVector::from_complete({1, 2, 1}), 2)[0] == 2);
  }
  SUBCASE("vote tie with equal sums: smaller label wins") {
    CrossDistanceMatrix dx(1, 3);
    dx(0, 0) = 1, dx(0, 1) = 1, dx(0, 2) = 9;
    CHECK(knn_classify(dx, LabelVector::from_complete({2, 1, 2}), 2)[0] == 1);
  }
  SUBCASE("distance tie at the k-th neighbour: lower training index") {
    CrossDistanceMatrix dx(1, 3);
    dx(0, 0) = 5, dx(0, 1) = 3, dx(0, 2) = 3;
    CHECK(knn_classify(dx, LabelVector::from_complete({1, 2, 1}), 1)[0] == 2);
  }
  SUBCASE("argument checks") {
    CrossDistanceMatrix dx(1, 3);
    const auto lab = LabelVector::from_complete({1, 2, 1});
    CHECK_THROWS_AS(knn_classify(dx, lab, 0), UsageError);
    CHECK_THROWS_AS(knn_classify(dx, lab, 4), UsageError);
    CHECK_THROWS_AS(knn_classify(dx, LabelVector::from_complete({1, 2}), 1), UsageError);
  }
}

TEST_CASE("1-NN on train-vs-train without self reproduces nearest-neighbour labels") {
  std::mt19937_64 gen(12);
  std::normal_distribution<double> z(0.0, 1.0);
  std::vector<std::vector<double>> rows(25, std::vector<double>(4));
  std::vector<int> lab(25);
  for (std::size_t i = 0; i < 25; ++i) {
    for (auto& v : rows[i]) v = z(gen);
    lab[i] = 1 + static_cast<int>(i % 3);
  }
  const auto x = DataMatrix::from_rows(rows);
  const auto labels = LabelVector::from_complete(lab);
  const auto d = pairwise(x, AggregationOrder(2));
  for (std::size_t a = 0; a < 25; ++a) {
    // training set = everyone except a
    CrossDistanceMatrix dx(1, 24);
    std::vector<int> others;
    std::size_t best = 0;
    double best_d = INFINITY;
    for (std::size_t i = 0, c = 0; i < 25; ++i) {
      if (i == a) continue;
      dx(0, c) = d(a, i);
      others.push_back(lab[i]);
      const double od = oracle::minkowski(rows[a], rows[i], 2.0);
      if (od < best_d) best_d = od, best = i;
      ++c;
    }
    CHECK(knn_classify(dx, LabelVector(others, 3), 1)[0] == lab[best]);
  }
}

TEST_CASE("clusterings are exactly k nonempty clusters") {
  std::mt19937_64 gen(13);
  for (int rep = 0; rep < 30; ++rep) {
    const std::size_t n = 10 + rep;
    const auto d = random_condensed(gen, n, false);
    for (std::size_t k : {2u, 3u, 5u}) {
      for (const auto& labels : {pam(d, k).labels, cut_tree(linkage(d, Linkage::complete), k),
                                 cut_tree(linkage(d, Linkage::average), k)}) {
        auto sizes = LabelVector::from_complete(labels.labels()).class_sizes();
        CHECK(sizes.size() == k);
      }
    }
  }
}
