#include "hddist/distance.hpp"

#include <charconv>
#include <cmath>

#include "distance_kernel.hpp"
#include "hddist/error.hpp"
#include "hddist/parallel.hpp"

namespace hddist {

AggregationOrder::AggregationOrder(double q) : q_(q) {
  if (!(q >= 1.0)) throw UsageError("aggregation order q must be >= 1 or infinity, got " + std::to_string(q));
}

std::string AggregationOrder::to_string() const {
  if (is_infinite()) return "inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), q_);
  return std::string(buf, res.ptr);
}

AggregationOrder AggregationOrder::parse(std::string_view text) {
  if (text == "inf" || text == "infinity" || text == "max" || text == "Inf") return infinity();
  double q = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), q);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw UsageError("cannot parse aggregation order '" + std::string(text) + "'");
  }
  return AggregationOrder(q);
}

double minkowski(std::span<const double> a, std::span<const double> b, AggregationOrder q) {
  if (a.size() != b.size()) {
    throw UsageError("minkowski: vectors of length " + std::to_string(a.size()) + " and " + std::to_string(b.size()));
  }
  if (a.empty()) throw UsageError("minkowski: empty vectors");
  return detail::minkowski_kernel(a.data(), b.data(), a.size(), q.q());
}

CondensedDistanceMatrix pairwise(const DataMatrix& x, AggregationOrder q) {
  const std::size_t n = x.n_rows();
  const std::size_t p = x.n_cols();
  if (n < 2) throw UsageError("pairwise: need at least 2 observations");
  const std::vector<double> rows = x.row_major();
  CondensedDistanceMatrix d(n);
  auto entries = d.mutable_entries();
  const double qv = q.q();
  const auto nn = static_cast<std::ptrdiff_t>(n);
  // Row j owns entries j(j-1)/2 .. j(j-1)/2 + j-1; later rows carry more work.
#pragma omp parallel for schedule(dynamic, 4) num_threads(thread_count())
  for (std::ptrdiff_t jj = 1; jj < nn; ++jj) {
    const auto j = static_cast<std::size_t>(jj);
    const double* rj = rows.data() + j * p;
    const std::size_t base = j * (j - 1) / 2;
    for (std::size_t i = 0; i < j; ++i) entries[base + i] = detail::minkowski_kernel(rows.data() + i * p, rj, p, qv);
  }
  return d;
}

CrossDistanceMatrix cross(const DataMatrix& test, const DataMatrix& train, AggregationOrder q) {
  if (test.n_cols() != train.n_cols()) {
    throw UsageError("cross: test has " + std::to_string(test.n_cols()) + " variables, training has " +
                     std::to_string(train.n_cols()));
  }
  const std::size_t p = train.n_cols();
  const std::vector<double> test_rows = test.row_major();
  const std::vector<double> train_rows = train.row_major();
  CrossDistanceMatrix d(test.n_rows(), train.n_rows());
  const double qv = q.q();
  const auto m = static_cast<std::ptrdiff_t>(test.n_rows());
#pragma omp parallel for schedule(static) num_threads(thread_count())
  for (std::ptrdiff_t aa = 0; aa < m; ++aa) {
    const auto a = static_cast<std::size_t>(aa);
    for (std::size_t i = 0; i < train.n_rows(); ++i)
      d(a, i) = detail::minkowski_kernel(test_rows.data() + a * p, train_rows.data() + i * p, p, qv);
  }
  return d;
}

}  // namespace hddist
