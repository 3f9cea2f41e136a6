#include "hddist/reference.hpp"

#include "distance_kernel.hpp"
#include "hddist/error.hpp"

namespace hddist::reference {

CondensedDistanceMatrix pairwise_serial(const DataMatrix& x, AggregationOrder q) {
  const std::size_t n = x.n_rows();
  const std::size_t p = x.n_cols();
  if (n < 2) throw UsageError("pairwise: need at least 2 observations");
  const std::vector<double> rows = x.row_major();
  CondensedDistanceMatrix d(n);
  auto entries = d.mutable_entries();
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = 0; i < j; ++i)
      entries[condensed_index(i, j, n)] = detail::minkowski_kernel(rows.data() + i * p, rows.data() + j * p, p, q.q());
  return d;
}

CrossDistanceMatrix cross_serial(const DataMatrix& test, const DataMatrix& train, AggregationOrder q) {
  if (test.n_cols() != train.n_cols()) throw UsageError("cross: column count mismatch");
  const std::size_t p = train.n_cols();
  const std::vector<double> test_rows = test.row_major();
  const std::vector<double> train_rows = train.row_major();
  CrossDistanceMatrix d(test.n_rows(), train.n_rows());
  for (std::size_t a = 0; a < test.n_rows(); ++a)
    for (std::size_t i = 0; i < train.n_rows(); ++i)
      d(a, i) = detail::minkowski_kernel(test_rows.data() + a * p, train_rows.data() + i * p, p, q.q());
  return d;
}

LinearScaling fit_linear_scaling_serial(const DataMatrix& x, StandardisationMethod method, const LabelVector* labels) {
  if (!is_linear(method)) throw UsageError("fit_linear_scaling: boxplot is fitted with fit_boxplot");
  if (is_pooled(method) && labels == nullptr) throw UsageError("pooled standardisation requires class labels");
  LinearScaling out;
  out.method = method;
  out.scales.assign(x.n_cols(), 1.0);
  if (method == StandardisationMethod::none) return out;
  for (std::size_t j = 0; j < x.n_cols(); ++j) {
    const auto col = x.column(j);
    out.scales[j] = scale_statistic(col, method, labels);
    if (is_zero_scale(out.scales[j], col)) out.zero_scale_columns.push_back(j);
  }
  return out;
}

BoxplotParams fit_boxplot_serial(const DataMatrix& x) {
  if (x.n_rows() < 2) throw UsageError("fit_boxplot: need at least 2 observations");
  BoxplotParams params;
  for (std::size_t j = 0; j < x.n_cols(); ++j) params.variables.push_back(fit_boxplot_variable(x.column(j)));
  return params;
}

DataMatrix apply_boxplot_serial(const DataMatrix& x, const BoxplotParams& params, bool cap) {
  if (params.variables.size() != x.n_cols()) throw UsageError("apply_boxplot: column count mismatch");
  DataMatrix out(x.n_rows(), x.n_cols());
  for (std::size_t j = 0; j < x.n_cols(); ++j)
    for (std::size_t i = 0; i < x.n_rows(); ++i) out(i, j) = apply_boxplot_value(x(i, j), params.variables[j], cap);
  return out;
}

}  // namespace hddist::reference
