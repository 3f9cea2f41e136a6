#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hddist/core.hpp"

namespace hddist {

enum class StandardisationMethod {
  none,
  unit_variance,
  mad,
  range,
  pooled_variance,
  pooled_mad_weights,
  pooled_mad_shift,
  pooled_range_weights,
  pooled_range_shift,
  boxplot,
};

inline constexpr StandardisationMethod kAllStandardisations[] = {
    StandardisationMethod::none,
    StandardisationMethod::unit_variance,
    StandardisationMethod::mad,
    StandardisationMethod::range,
    StandardisationMethod::pooled_variance,
    StandardisationMethod::pooled_mad_weights,
    StandardisationMethod::pooled_mad_shift,
    StandardisationMethod::pooled_range_weights,
    StandardisationMethod::pooled_range_shift,
    StandardisationMethod::boxplot,
};

std::string_view to_string(StandardisationMethod m);
// Accepts the names above; throws UsageError otherwise.
StandardisationMethod parse_standardisation(std::string_view name);

// Pooled methods need class labels.
bool is_pooled(StandardisationMethod m);
bool is_linear(StandardisationMethod m);

// Scale statistic s_j of one variable. MAD is the raw median of absolute
// deviations (no Gaussian consistency factor); unit_variance and
// pooled_variance return standard deviations, not variances. Pooled methods:
//   pooled_variance       sqrt( sum_l sum_{i in l} (x_i - mean_l)^2 / sum_l (n_l - 1) )
//   pooled_mad_weights    sum_l n_l MAD_l / n
//   pooled_range_weights  sum_l n_l range_l / n
//   pooled_mad_shift      median_i |x_i - median of x_i's class|
//   pooled_range_shift    max_l range_l
// `none` returns 1.
//
// Throws UsageError for column length < 2, boxplot, a pooled method without
// labels or with a label count mismatch; DegenerateClassError when a class has
// fewer than 2 members (pooled_variance) or none (other pooled methods).
double scale_statistic(std::span<const double> column, StandardisationMethod method,
                       const LabelVector* labels = nullptr);

// True when `scale` is zero relative to the magnitude of the column: such a
// variable is treated as constant.
bool is_zero_scale(double scale, std::span<const double> column);

// Per-variable scales fitted on training data, applicable to any matrix with
// the same column count.
struct LinearScaling {
  StandardisationMethod method = StandardisationMethod::none;
  std::vector<double> scales;
  // Variables whose statistic was zero; their standardised values are all 0.
  std::vector<std::size_t> zero_scale_columns;
};

LinearScaling fit_linear_scaling(const DataMatrix& x, StandardisationMethod method,
                                 const LabelVector* labels = nullptr);
DataMatrix apply_linear_scaling(const DataMatrix& x, const LinearScaling& scaling);

struct Standardised {
  DataMatrix data;
  std::vector<std::size_t> zero_scale_columns;
};

// x_ij / s_j for every variable; no location shift. Throws UsageError for boxplot
// (use fit_boxplot/apply_boxplot).
Standardised standardise_matrix(const DataMatrix& x, StandardisationMethod method,
                                const LabelVector* labels = nullptr);

}  // namespace hddist
