#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hddist/core.hpp"

namespace hddist {

// Boxplot transformation of one variable, fitted on training data.
//
// Values are centred at the median and the two halves scaled separately so
// that the first and third quartiles land on -0.5 and +0.5. If the training
// variable has scaled values beyond -2 (resp. +2), everything beyond -0.5
// (resp. +0.5) is pulled in by the tail map
//
//   y -> -0.5 - (1 - (1 + y)^(-t)) / t,   y = -x* - 0.5 >= 0,
//
// (log form -0.5 - log(1 + y) at t = 0) with t chosen so that the training
// minimum lands exactly on -2; symmetrically for the upper tail. The map has
// value -0.5 and slope 1 at x* = -0.5.
struct BoxplotVariable {
  double median = 0.0;
  double lqr = 0.0;  // median - q1, after degenerate-quartile substitution
  double uqr = 0.0;  // q3 - median, after degenerate-quartile substitution
  std::optional<double> t_lower;
  std::optional<double> t_upper;
  // Both quartile ranges zero; the variable transforms to all zeros.
  bool degenerate = false;
  // Extremes of the training data in scaled (pre-tail) coordinates.
  double scaled_min = 0.0;
  double scaled_max = 0.0;

  bool operator==(const BoxplotVariable&) const = default;
};

struct BoxplotParams {
  std::vector<BoxplotVariable> variables;

  std::string to_json() const;
  // Throws FormatError on malformed documents.
  static BoxplotParams from_json(const std::string& text);

  bool operator==(const BoxplotParams&) const = default;
};

// Unique real t with (1 - M^(-t)) / t = 1.5 (value ln M at t = 0). The function
// is strictly decreasing in t, so the root is found by bracket expansion and
// bisection to full double precision (at most 200 iterations). t < 0 when
// ln M < 1.5. Throws DomainError for M <= 1 or non-finite M.
double solve_tail_exponent(double m);

// The compressed tail offset (1 - (1 + y)^(-t)) / t for y >= 0, log1p(y) at t = 0.
double tail_offset(double y, double t);

BoxplotVariable fit_boxplot_variable(std::span<const double> column);
BoxplotParams fit_boxplot(const DataMatrix& x);

// Transform one value. With cap set, the result is clamped to [-2, 2]
// (used for data that was not part of the fit).
double apply_boxplot_value(double x, const BoxplotVariable& v, bool cap);

// Throws UsageError if the column count differs from the fitted variables.
DataMatrix apply_boxplot(const DataMatrix& x, const BoxplotParams& params, bool cap);

}  // namespace hddist
