#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <json.hpp>

#include "hddist/boxplot.hpp"
#include "hddist/distance.hpp"
#include "hddist/error.hpp"
#include "hddist/parallel.hpp"
#include "hddist/quantile.hpp"
#include "hddist/simgen.hpp"
#include "hddist/standardise.hpp"

using namespace hddist;

namespace {

const double kInfQ = std::numeric_limits<double>::infinity();

SetupSpec small(const std::string& name, std::size_t p, std::size_t n_per_class = 10) {
  auto s = find_setup(name);
  s.p = p;
  s.n_per_class = n_per_class;
  return s;
}

double sample_sd(std::span<const double> v) {
  double m = 0;
  for (double x : v) m += x;
  m /= static_cast<double>(v.size());
  double ss = 0;
  for (double x : v) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

}  // namespace

TEST_CASE("setup catalog") {
  const auto cat = setup_catalog();
  REQUIRE(cat.size() == 5);
  for (const auto& s : cat) {
    CHECK(s.n_per_class == 50);
    CHECK(s.p == 2000);
    CHECK_NOTHROW(s.validate());
  }
  CHECK(find_setup("simple_normal").p_t == 0.0);
  CHECK(find_setup("simple_normal").p_n == 0.0);
  CHECK(find_setup("simple_normal").mean_diff == Interval{0.1, 0.1});
  CHECK(find_setup("simple_normal").sd_range == Interval{0.5, 1.5});
  CHECK(find_setup("simple_normal_099").mean_diff == Interval{12, 12});
  CHECK(find_setup("simple_normal_099").mean_diff.fixed());
  CHECK(find_setup("simple_normal_099").p_n == 0.99);
  CHECK(find_setup("simple_normal_099").sd_range == Interval{0.5, 2});
  CHECK(find_setup("ntn_01").mean_diff == Interval{0, 0.3});
  CHECK(find_setup("ntn_05").sd_range == Interval{0.5, 10});
  CHECK(find_setup("ntn_05").mean_diff == Interval{0, 2});
  CHECK(find_setup("ntn_09").p_t == 0.9);
  CHECK(find_setup("ntn_09").mean_diff == Interval{0, 10});
  CHECK_THROWS_AS(find_setup("nope"), UsageError);
}

TEST_CASE("setup validation") {
  auto s = small("ntn_05", 5);
  s.p_n = 1.5;
  CHECK_THROWS_AS(s.validate(), UsageError);
  s = small("ntn_05", 5);
  s.sd_range = {0.0, 1.0};
  CHECK_THROWS_AS(generate(s, 1), UsageError);
  s = small("ntn_05", 5);
  s.mean_diff = {2.0, 1.0};
  CHECK_THROWS_AS(s.validate(), UsageError);
}

TEST_CASE("shapes and labels") {
  const auto d = generate(small("ntn_05", 30, 7), 3);
  CHECK(d.x_train.n_rows() == 14);
  CHECK(d.x_test.n_rows() == 14);
  CHECK(d.x_train.n_cols() == 30);
  CHECK(d.variables.size() == 30);
  CHECK(d.y_train.class_sizes() == std::vector<std::size_t>{7, 7});
  CHECK(d.y_test == d.y_train);
  CHECK(d.y_train[6] == 1);
  CHECK(d.y_train[7] == 2);
}

TEST_CASE("simple_normal has no noise or t variables") {
  const auto d = generate(small("simple_normal", 500), 11);
  for (const auto& v : d.variables) {
    CHECK_FALSE(v.is_noise);
    CHECK_FALSE(v.is_t);
    CHECK(v.mean_diff == 0.1);
  }
}

TEST_CASE("determinism, seed sensitivity, thread independence") {
  const auto s = small("ntn_05", 200);
  set_thread_count(1);
  const auto a = generate(s, 99);
  set_thread_count(4);
  const auto b = generate(s, 99);
  set_thread_count(0);
  CHECK(a.x_train == b.x_train);
  CHECK(a.x_test == b.x_test);
  CHECK(a.variables == b.variables);
  const auto c = generate(s, 100);
  CHECK_FALSE(a.x_train == c.x_train);
  CHECK_FALSE(a.x_train == a.x_test);
}

TEST_CASE("changing p keeps the earlier variables") {
  const auto a = generate(small("ntn_09", 40), 5);
  const auto b = generate(small("ntn_09", 80), 5);
  for (std::size_t j = 0; j < 40; ++j) {
    CHECK(a.variables[j] == b.variables[j]);
    for (std::size_t i = 0; i < a.x_train.n_rows(); ++i) REQUIRE(a.x_train(i, j) == b.x_train(i, j));
  }
}

TEST_CASE("noise and t fractions, flag independence") {
  for (const char* name : {"ntn_01", "ntn_05", "ntn_09", "simple_normal_099"}) {
    const auto s = small(name, 10000, 2);
    const auto d = generate(s, 2718);
    double noise = 0, t = 0, both = 0;
    for (const auto& v : d.variables) noise += v.is_noise, t += v.is_t, both += v.is_noise && v.is_t;
    const double n = 10000;
    CHECK(std::fabs(noise / n - s.p_n) <= 3 * std::sqrt(s.p_n * (1 - s.p_n) / n) + 1e-12);
    CHECK(std::fabs(t / n - s.p_t) <= 3 * std::sqrt(s.p_t * (1 - s.p_t) / n) + 1e-12);
    const double vn = noise / n * (1 - noise / n), vt = t / n * (1 - t / n);
    if (vn > 0 && vt > 0) {
      const double r = (both / n - noise / n * t / n) / std::sqrt(vn * vt);
      CHECK(std::fabs(r) < 0.05);
    }
  }
}

TEST_CASE("parameter draws follow the uniform ranges") {
  const auto s = small("ntn_05", 10000, 2);
  const auto d = generate(s, 31);
  double sum1 = 0, sum_delta = 0, informative = 0;
  for (const auto& v : d.variables) {
    CHECK(v.sd_class1 >= 0.5);
    CHECK(v.sd_class1 <= 10);
    CHECK(v.sd_class2 >= 0.5);
    CHECK(v.sd_class2 <= 10);
    sum1 += v.sd_class1;
    if (v.is_noise) {
      CHECK(v.mean_diff == 0);
      CHECK(v.sd_class2 == v.sd_class1);
    } else {
      sum_delta += v.mean_diff;
      informative += 1;
    }
  }
  // Uniform[a,b]: mean (a+b)/2, sd (b-a)/sqrt(12).
  CHECK(std::fabs(sum1 / 10000 - 5.25) <= 3 * 9.5 / std::sqrt(12.0) / 100);
  CHECK(std::fabs(sum_delta / informative - 1.0) <= 3 * 2.0 / std::sqrt(12.0) / std::sqrt(informative));
}

TEST_CASE("empirical per-class sds match the drawn parameters") {
  const auto s = small("simple_normal", 100, 2000);
  const auto d = generate(s, 8);
  for (std::size_t j = 0; j < s.p; ++j) {
    const auto col = d.x_train.column(j);
    const double s1 = sample_sd(col.subspan(0, 2000));
    const double s2 = sample_sd(col.subspan(2000, 2000));
    // sd of a normal sample sd is about sigma / sqrt(2(n-1)); allow 4 of those
    CHECK(std::fabs(s1 - d.variables[j].sd_class1) <= 4 * d.variables[j].sd_class1 / std::sqrt(3998.0));
    CHECK(std::fabs(s2 - d.variables[j].sd_class2) <= 4 * d.variables[j].sd_class2 / std::sqrt(3998.0));
    CHECK(s1 > 0.5 * 0.9);
    CHECK(s1 < 1.5 * 1.1);
  }
}

TEST_CASE("t2 sampler quantiles") {
  // upper t2 quartile is sqrt(2/3)
  CHECK(rng::t2_from_uniform(0.5) == 0.0);
  CHECK(rng::t2_from_uniform(0.75) == doctest::Approx(0.816496580927726).epsilon(1e-14));
  auto s = small("ntn_09", 1, 50000);
  s.p_t = 1.0;
  s.mean_diff = {0, 0};
  s.sd_range = {1, 1};
  const auto d = generate(s, 4);
  std::vector<double> draws(d.x_train.column(0).begin(), d.x_train.column(0).end());
  CHECK(draws.size() == 100000);
  CHECK(std::fabs(median(draws)) <= 0.02);
  const double iqr = quantile(draws, 0.75) - quantile(draws, 0.25);
  CHECK(std::fabs(iqr / 1.632993161855452 - 1.0) <= 0.02);
}

TEST_CASE("metadata sidecar") {
  const auto d = generate(small("ntn_05", 4), 77);
  const auto j = nlohmann::json::parse(dataset_metadata_json(d));
  CHECK(j["seed"] == 77);
  CHECK(j["setup"]["name"] == "ntn_05");
  REQUIRE(j["variables"].size() == 4);
  CHECK(j["variables"][2]["sd_class1"].get<double>() == d.variables[2].sd_class1);
}

TEST_CASE("replicate seeds are distinct") {
  CHECK(rng::replicate_seed(1, 0) != rng::replicate_seed(1, 1));
  CHECK(rng::replicate_seed(1, 0) != rng::replicate_seed(2, 0));
  CHECK(rng::substream_seed(1, 0, 1) != rng::substream_seed(1, 1, 0));
}

TEST_CASE("reflecting variables leaves standardised distances unchanged") {
  const auto d = generate(small("ntn_05", 25, 8), 6);
  std::vector<double> flipped(d.x_train.values().begin(), d.x_train.values().end());
  const std::size_t n = d.x_train.n_rows();
  for (std::size_t j = 0; j < 25; j += 2)
    for (std::size_t i = 0; i < n; ++i) flipped[j * n + i] = -flipped[j * n + i];
  const auto xf = DataMatrix::from_columns(n, 25, flipped);
  for (auto m : kAllStandardisations) {
    DataMatrix a, b;
    if (m == StandardisationMethod::boxplot) {
      a = apply_boxplot(d.x_train, fit_boxplot(d.x_train), false);
      b = apply_boxplot(xf, fit_boxplot(xf), false);
    } else {
      a = standardise_matrix(d.x_train, m, &d.y_train).data;
      b = standardise_matrix(xf, m, &d.y_train).data;
    }
    for (double q : {1.0, 2.0, kInfQ}) {
      const auto order = std::isinf(q) ? AggregationOrder::infinity() : AggregationOrder(q);
      const auto da = pairwise(a, order), db = pairwise(b, order);
      for (std::size_t k = 0; k < da.entries().size(); ++k)
        REQUIRE(da.entries()[k] == doctest::Approx(db.entries()[k]).epsilon(1e-12));
    }
  }
}
