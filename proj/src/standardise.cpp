#include "hddist/standardise.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>

#include "hddist/error.hpp"
#include "hddist/parallel.hpp"
#include "hddist/quantile.hpp"

namespace hddist {

namespace {

constexpr double kZeroScaleTolerance = 1e-12;

struct Named {
  StandardisationMethod method;
  std::string_view name;
};

constexpr Named kNames[] = {
    {StandardisationMethod::none, "none"},
    {StandardisationMethod::unit_variance, "unit_variance"},
    {StandardisationMethod::mad, "mad"},
    {StandardisationMethod::range, "range"},
    {StandardisationMethod::pooled_variance, "pooled_variance"},
    {StandardisationMethod::pooled_mad_weights, "pooled_mad_weights"},
    {StandardisationMethod::pooled_mad_shift, "pooled_mad_shift"},
    {StandardisationMethod::pooled_range_weights, "pooled_range_weights"},
    {StandardisationMethod::pooled_range_shift, "pooled_range_shift"},
    {StandardisationMethod::boxplot, "boxplot"},
};

double mean_of(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double sum_sq_dev(std::span<const double> v) {
  const double m = mean_of(v);
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return ss;
}

double mad_of(std::span<const double> v) {
  const double med = median(v);
  std::vector<double> dev(v.size());
  std::transform(v.begin(), v.end(), dev.begin(), [med](double x) { return std::fabs(x - med); });
  return median(dev);
}

double range_of(std::span<const double> v) {
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return *hi - *lo;
}

// Values of the column split by class, in class order 1..k.
std::vector<std::vector<double>> split_by_class(std::span<const double> column, const LabelVector& labels,
                                                std::size_t min_size, StandardisationMethod method) {
  std::vector<std::vector<double>> groups(static_cast<std::size_t>(labels.k()));
  for (std::size_t i = 0; i < column.size(); ++i) groups[static_cast<std::size_t>(labels[i] - 1)].push_back(column[i]);
  for (std::size_t c = 0; c < groups.size(); ++c) {
    if (groups[c].size() < min_size) {
      throw DegenerateClassError(std::string(to_string(method)) + ": class " + std::to_string(c + 1) + " has " +
                                 std::to_string(groups[c].size()) + " member(s), need at least " +
                                 std::to_string(min_size));
    }
  }
  return groups;
}

}  // namespace

std::string_view to_string(StandardisationMethod m) {
  for (const auto& n : kNames)
    if (n.method == m) return n.name;
  return "unknown";
}

StandardisationMethod parse_standardisation(std::string_view name) {
  for (const auto& n : kNames)
    if (n.name == name) return n.method;
  // Short aliases.
  if (name == "pvar") return StandardisationMethod::pooled_variance;
  if (name == "pm1") return StandardisationMethod::pooled_mad_weights;
  if (name == "pm2") return StandardisationMethod::pooled_mad_shift;
  if (name == "pr1") return StandardisationMethod::pooled_range_weights;
  if (name == "pr2") return StandardisationMethod::pooled_range_shift;
  throw UsageError("unknown standardisation '" + std::string(name) + "'");
}

bool is_pooled(StandardisationMethod m) {
  switch (m) {
    case StandardisationMethod::pooled_variance:
    case StandardisationMethod::pooled_mad_weights:
    case StandardisationMethod::pooled_mad_shift:
    case StandardisationMethod::pooled_range_weights:
    case StandardisationMethod::pooled_range_shift:
      return true;
    default:
      return false;
  }
}

bool is_linear(StandardisationMethod m) { return m != StandardisationMethod::boxplot; }

double scale_statistic(std::span<const double> column, StandardisationMethod method, const LabelVector* labels) {
  if (column.size() < 2) throw UsageError("scale_statistic: need at least 2 observations");
  if (is_pooled(method)) {
    if (labels == nullptr) throw UsageError(std::string(to_string(method)) + " requires class labels");
    if (labels->size() != column.size()) {
      throw UsageError("scale_statistic: " + std::to_string(labels->size()) + " labels for " +
                       std::to_string(column.size()) + " observations");
    }
  }

  switch (method) {
    case StandardisationMethod::none:
      return 1.0;
    case StandardisationMethod::unit_variance:
      return std::sqrt(sum_sq_dev(column) / static_cast<double>(column.size() - 1));
    case StandardisationMethod::mad:
      return mad_of(column);
    case StandardisationMethod::range:
      return range_of(column);

    case StandardisationMethod::pooled_variance: {
      const auto groups = split_by_class(column, *labels, 2, method);
      double ss = 0.0;
      std::size_t dof = 0;
      for (const auto& g : groups) {
        ss += sum_sq_dev(g);
        dof += g.size() - 1;
      }
      return std::sqrt(ss / static_cast<double>(dof));
    }
    case StandardisationMethod::pooled_mad_weights:
    case StandardisationMethod::pooled_range_weights: {
      const auto groups = split_by_class(column, *labels, 1, method);
      const bool use_mad = method == StandardisationMethod::pooled_mad_weights;
      double acc = 0.0;
      for (const auto& g : groups) acc += static_cast<double>(g.size()) * (use_mad ? mad_of(g) : range_of(g));
      return acc / static_cast<double>(column.size());
    }
    case StandardisationMethod::pooled_mad_shift: {
      const auto groups = split_by_class(column, *labels, 1, method);
      std::vector<double> class_median(groups.size());
      for (std::size_t c = 0; c < groups.size(); ++c) class_median[c] = median(groups[c]);
      std::vector<double> shifted(column.size());
      for (std::size_t i = 0; i < column.size(); ++i)
        shifted[i] = std::fabs(column[i] - class_median[static_cast<std::size_t>((*labels)[i] - 1)]);
      return median(shifted);
    }
    case StandardisationMethod::pooled_range_shift: {
      const auto groups = split_by_class(column, *labels, 1, method);
      double r = 0.0;
      for (const auto& g : groups) r = std::max(r, range_of(g));
      return r;
    }
    case StandardisationMethod::boxplot:
      break;
  }
  throw UsageError("scale_statistic: boxplot is not a linear scale statistic; use fit_boxplot");
}

bool is_zero_scale(double scale, std::span<const double> column) {
  double magnitude = 0.0;
  for (double x : column) magnitude = std::max(magnitude, std::fabs(x));
  return !(scale > kZeroScaleTolerance * magnitude);
}

LinearScaling fit_linear_scaling(const DataMatrix& x, StandardisationMethod method, const LabelVector* labels) {
  if (!is_linear(method)) throw UsageError("fit_linear_scaling: boxplot is fitted with fit_boxplot");
  if (is_pooled(method) && labels == nullptr) throw UsageError(std::string(to_string(method)) + " requires class labels");
  LinearScaling out;
  out.method = method;
  out.scales.assign(x.n_cols(), 1.0);
  if (method == StandardisationMethod::none) return out;

  const auto p = static_cast<std::ptrdiff_t>(x.n_cols());
  std::vector<char> zero(x.n_cols(), 0);
  // Exceptions must not escape an OpenMP region; capture the first one.
  std::exception_ptr failure;
#pragma omp parallel for schedule(static) num_threads(thread_count())
  for (std::ptrdiff_t j = 0; j < p; ++j) {
    try {
      const auto col = x.column(static_cast<std::size_t>(j));
      const double s = scale_statistic(col, method, labels);
      out.scales[static_cast<std::size_t>(j)] = s;
      zero[static_cast<std::size_t>(j)] = is_zero_scale(s, col) ? 1 : 0;
    } catch (...) {
#pragma omp critical(hddist_fit_scaling)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  for (std::size_t j = 0; j < x.n_cols(); ++j)
    if (zero[j]) out.zero_scale_columns.push_back(j);
  return out;
}

DataMatrix apply_linear_scaling(const DataMatrix& x, const LinearScaling& scaling) {
  if (scaling.scales.size() != x.n_cols()) {
    throw UsageError("apply_linear_scaling: scaling has " + std::to_string(scaling.scales.size()) +
                     " variables, data has " + std::to_string(x.n_cols()));
  }
  if (scaling.method == StandardisationMethod::none) return x;
  std::vector<char> zero(x.n_cols(), 0);
  for (std::size_t j : scaling.zero_scale_columns) zero[j] = 1;

  DataMatrix out(x.n_rows(), x.n_cols());
  const auto p = static_cast<std::ptrdiff_t>(x.n_cols());
#pragma omp parallel for schedule(static) num_threads(thread_count())
  for (std::ptrdiff_t jj = 0; jj < p; ++jj) {
    const auto j = static_cast<std::size_t>(jj);
    const auto src = x.column(j);
    auto dst = out.column(j);
    if (zero[j]) continue;
    const double s = scaling.scales[j];
    for (std::size_t i = 0; i < src.size(); ++i) dst[i] = src[i] / s;
  }
  return out;
}

Standardised standardise_matrix(const DataMatrix& x, StandardisationMethod method, const LabelVector* labels) {
  auto scaling = fit_linear_scaling(x, method, labels);
  return {apply_linear_scaling(x, scaling), std::move(scaling.zero_scale_columns)};
}

}  // namespace hddist
