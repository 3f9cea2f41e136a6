#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "hddist/error.hpp"
#include "hddist/quantile.hpp"
#include "hddist/reference.hpp"
#include "hddist/standardise.hpp"

using namespace hddist;

namespace {

// Brute-force MAD: sort, take middle, sort deviations, take middle.
double brute_median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double brute_mad(const std::vector<double>& v) {
  const double m = brute_median(v);
  std::vector<double> d;
  for (double x : v) d.push_back(std::fabs(x - m));
  return brute_median(d);
}

DataMatrix random_matrix(std::size_t n, std::size_t p, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> z(0.0, 1.0);
  std::vector<double> v(n * p);
  for (auto& x : v) x = z(gen) * 3.0 + 1.0;
  return DataMatrix::from_columns(n, p, std::move(v));
}

}  // namespace

TEST_CASE("quantile examples") {
  CHECK(quantile(std::vector<double>{1, 2, 3, 4}, 0.5) == 2.5);
  CHECK(quantile(std::vector<double>{5, 1, 3, 2, 4}, 0.25) == 2.0);
  CHECK(quantile(std::vector<double>{7}, 0.0) == 7.0);
  CHECK(quantile(std::vector<double>{7}, 0.37) == 7.0);
  CHECK(quantile(std::vector<double>{7}, 1.0) == 7.0);
  CHECK(quantile(std::vector<double>{1, 2, 3, 4}, 0.0) == 1.0);
  CHECK(quantile(std::vector<double>{1, 2, 3, 4}, 1.0) == 4.0);
  CHECK(quantile(std::vector<double>{-1, -0.5, 0, 0.5, 1}, 0.25) == -0.5);
  CHECK_THROWS_AS(quantile(std::vector<double>{}, 0.5), UsageError);
  CHECK_THROWS_AS(quantile(std::vector<double>{1}, 1.5), UsageError);
}

TEST_CASE("quantile matches the order-statistic formula on random samples") {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> u(-10, 10);
  for (int rep = 0; rep < 200; ++rep) {
    std::vector<double> v(1 + rep % 17);
    for (auto& x : v) x = u(gen);
    const double prob = std::uniform_real_distribution<double>(0, 1)(gen);
    std::vector<double> s = v;
    std::sort(s.begin(), s.end());
    const double h = static_cast<double>(s.size() - 1) * prob + 1.0;  // 1-based
    const auto fl = static_cast<std::size_t>(std::floor(h));
    const double expected = fl >= s.size() ? s.back() : s[fl - 1] + (h - std::floor(h)) * (s[fl] - s[fl - 1]);
    CHECK(quantile(v, prob) == doctest::Approx(expected).epsilon(1e-14));
  }
}

TEST_CASE("scale statistics: worked examples") {
  CHECK(scale_statistic(std::vector<double>{1, 2, 3, 4, 100}, StandardisationMethod::mad) == 1.0);
  CHECK(brute_mad({1, 2, 3, 4, 100}) == 1.0);
  CHECK(scale_statistic(std::vector<double>{1, 2, 5}, StandardisationMethod::range) == 4.0);
  CHECK(scale_statistic(std::vector<double>{0, 2, 4}, StandardisationMethod::unit_variance) == 2.0);

  const std::vector<double> col = {0, 2, 0, 4};
  const auto labels = LabelVector::from_complete({1, 1, 2, 2});
  CHECK(scale_statistic(col, StandardisationMethod::pooled_mad_weights, &labels) == 1.5);
  CHECK(scale_statistic(col, StandardisationMethod::pooled_mad_shift, &labels) == 1.5);
  CHECK(scale_statistic(col, StandardisationMethod::pooled_range_shift, &labels) == 4.0);
  CHECK(scale_statistic(col, StandardisationMethod::pooled_range_weights, &labels) == 3.0);
  // Class variances 2 and 8, one degree of freedom each.
  CHECK(scale_statistic(col, StandardisationMethod::pooled_variance, &labels) == doctest::Approx(std::sqrt(5.0)));
  CHECK(scale_statistic(col, StandardisationMethod::none) == 1.0);
}

TEST_CASE("MAD agrees with brute force") {
  std::mt19937_64 gen(17);
  std::cauchy_distribution<double> c(0.0, 1.0);
  for (int rep = 0; rep < 100; ++rep) {
    std::vector<double> v(2 + rep % 23);
    for (auto& x : v) x = c(gen);
    CHECK(scale_statistic(v, StandardisationMethod::mad) == doctest::Approx(brute_mad(v)).epsilon(1e-13));
  }
}

TEST_CASE("shift-based pooled MAD can differ from weights-based pooling") {
  // Class 1 tight, class 2 wide: the shifted sample is dominated by class 1.
  const std::vector<double> col = {0, 1, 2, 10, 20, 30, 40};
  const auto labels = LabelVector::from_complete({1, 1, 1, 2, 2, 2, 2});
  const double shift = scale_statistic(col, StandardisationMethod::pooled_mad_shift, &labels);
  const double weights = scale_statistic(col, StandardisationMethod::pooled_mad_weights, &labels);
  // class MADs: 1 and 10 -> (3*1 + 4*10)/7; shifted |values|: 1,0,1,15,5,5,15 -> median 5
  CHECK(weights == doctest::Approx(43.0 / 7.0));
  CHECK(shift == 5.0);
}

TEST_CASE("pooled errors") {
  const std::vector<double> col = {0, 2, 0, 4};
  CHECK_THROWS_AS(scale_statistic(col, StandardisationMethod::pooled_mad_shift, nullptr), UsageError);
  const auto bad_len = LabelVector::from_complete({1, 2});
  CHECK_THROWS_AS(scale_statistic(col, StandardisationMethod::pooled_mad_shift, &bad_len), UsageError);
  const auto singleton = LabelVector::from_complete({1, 1, 1, 2});
  CHECK_THROWS_AS(scale_statistic(col, StandardisationMethod::pooled_variance, &singleton), DegenerateClassError);
  CHECK_NOTHROW(scale_statistic(col, StandardisationMethod::pooled_mad_weights, &singleton));
  CHECK_NOTHROW(scale_statistic(col, StandardisationMethod::pooled_range_shift, &singleton));
  const LabelVector empty_class({1, 1, 1, 1}, 2);
  CHECK_THROWS_AS(scale_statistic(col, StandardisationMethod::pooled_range_weights, &empty_class), DegenerateClassError);
  CHECK_THROWS_AS(scale_statistic(std::vector<double>{1}, StandardisationMethod::mad), UsageError);
  CHECK_THROWS_AS(scale_statistic(col, StandardisationMethod::boxplot), UsageError);
}

TEST_CASE("pooled variance numerator equals the sum of squares of class-mean-centred data") {
  std::mt19937_64 gen(23);
  std::normal_distribution<double> z(0.0, 1.0);
  for (int rep = 0; rep < 50; ++rep) {
    const std::size_t n1 = 2 + rep % 7, n2 = 3 + rep % 5, n3 = 2 + rep % 3;
    std::vector<double> col;
    std::vector<int> lab;
    for (std::size_t i = 0; i < n1; ++i) col.push_back(z(gen)), lab.push_back(1);
    for (std::size_t i = 0; i < n2; ++i) col.push_back(5 + 3 * z(gen)), lab.push_back(2);
    for (std::size_t i = 0; i < n3; ++i) col.push_back(-2 + 0.5 * z(gen)), lab.push_back(3);
    const auto labels = LabelVector::from_complete(lab);

    // Shift-based route: centre each class at its mean, pool, sum squares.
    double mean[3] = {0, 0, 0};
    double cnt[3] = {0, 0, 0};
    for (std::size_t i = 0; i < col.size(); ++i) mean[lab[i] - 1] += col[i], cnt[lab[i] - 1] += 1;
    for (int c = 0; c < 3; ++c) mean[c] /= cnt[c];
    double ss_shift = 0.0;
    for (std::size_t i = 0; i < col.size(); ++i) ss_shift += (col[i] - mean[lab[i] - 1]) * (col[i] - mean[lab[i] - 1]);

    // Weights-based route: pooled variance times its degrees of freedom.
    const double s = scale_statistic(col, StandardisationMethod::pooled_variance, &labels);
    const double ss_weights = s * s * static_cast<double>(col.size() - 3);
    CHECK(ss_weights == doctest::Approx(ss_shift).epsilon(1e-12));
  }
}

TEST_CASE("standardise_matrix") {
  const auto x = DataMatrix::from_rows({{0, 5}, {2, 5}, {4, 5}});
  SUBCASE("none is identity") { CHECK(standardise_matrix(x, StandardisationMethod::none).data == x); }
  SUBCASE("unit variance, constant column zeroed with warning") {
    const auto r = standardise_matrix(x, StandardisationMethod::unit_variance);
    CHECK(r.data(0, 0) == 0);
    CHECK(r.data(1, 0) == 1);
    CHECK(r.data(2, 0) == 2);
    for (std::size_t i = 0; i < 3; ++i) CHECK(r.data(i, 1) == 0);
    CHECK(r.zero_scale_columns == std::vector<std::size_t>{1});
  }
  SUBCASE("every method zeroes a constant column") {
    const auto labels = LabelVector::from_complete({1, 1, 2});
    for (auto m : kAllStandardisations) {
      if (m == StandardisationMethod::none || m == StandardisationMethod::boxplot ||
          m == StandardisationMethod::pooled_variance)
        continue;
      const auto r = standardise_matrix(x, m, &labels);
      CHECK(r.zero_scale_columns == std::vector<std::size_t>{1});
      for (std::size_t i = 0; i < 3; ++i) CHECK(r.data(i, 1) == 0);
    }
  }
  SUBCASE("boxplot rejected") { CHECK_THROWS_AS(standardise_matrix(x, StandardisationMethod::boxplot), UsageError); }
}

TEST_CASE("scale equivariance of linear standardisations") {
  const auto x = random_matrix(30, 12, 99);
  std::vector<int> lab(30);
  for (std::size_t i = 0; i < 30; ++i) lab[i] = i < 14 ? 1 : 2;
  const auto labels = LabelVector::from_complete(lab);
  for (double c : {0.001, 3.7, 1e6}) {
    std::vector<double> scaled(x.values().begin(), x.values().end());
    for (auto& v : scaled) v *= c;
    const auto cx = DataMatrix::from_columns(30, 12, scaled);
    for (auto m : kAllStandardisations) {
      if (m == StandardisationMethod::none || m == StandardisationMethod::boxplot) continue;
      const auto a = standardise_matrix(x, m, &labels).data;
      const auto b = standardise_matrix(cx, m, &labels).data;
      for (std::size_t i = 0; i < a.values().size(); ++i) REQUIRE(std::fabs(a.values()[i] - b.values()[i]) <= 1e-12);
    }
  }
}

TEST_CASE("parallel scaling fit is bit-identical to the serial reference") {
  const auto x = random_matrix(40, 300, 3);
  std::vector<int> lab(40);
  for (std::size_t i = 0; i < 40; ++i) lab[i] = 1 + static_cast<int>(i % 3);
  const auto labels = LabelVector::from_complete(lab);
  for (auto m : kAllStandardisations) {
    if (m == StandardisationMethod::boxplot) continue;
    const auto par = fit_linear_scaling(x, m, &labels);
    const auto ser = reference::fit_linear_scaling_serial(x, m, &labels);
    CHECK(par.scales == ser.scales);
    CHECK(par.zero_scale_columns == ser.zero_scale_columns);
  }
}

TEST_CASE("method names round-trip") {
  for (auto m : kAllStandardisations) CHECK(parse_standardisation(to_string(m)) == m);
  CHECK(parse_standardisation("pm2") == StandardisationMethod::pooled_mad_shift);
  CHECK_THROWS_AS(parse_standardisation("zscore"), UsageError);
}
