#pragma once

#include <limits>
#include <span>
#include <string>
#include <string_view>

#include "hddist/core.hpp"

namespace hddist {

// Minkowski exponent q >= 1, or infinity for the maximum distance. Values in
// (0, 1) are rejected since the triangle inequality fails there.
class AggregationOrder {
 public:
  explicit AggregationOrder(double q);
  static AggregationOrder infinity() { return AggregationOrder(std::numeric_limits<double>::infinity()); }

  double q() const { return q_; }
  bool is_infinite() const { return q_ == std::numeric_limits<double>::infinity(); }

  // "inf" for infinity, otherwise the shortest decimal form ("1", "2.5").
  std::string to_string() const;
  // Accepts a number >= 1 or one of "inf", "infinity", "max".
  static AggregationOrder parse(std::string_view text);

  bool operator==(const AggregationOrder&) const = default;

 private:
  double q_;
};

// L_q distance between two points, summing over variables in index order.
// For finite q other than 1 the largest coordinate difference is factored out
// before powering so huge differences cannot overflow.
// Throws UsageError on a length mismatch or empty vectors.
double minkowski(std::span<const double> a, std::span<const double> b, AggregationOrder q);

// All pairwise distances between rows of x (OpenMP over pairs; output is
// identical for any thread count). Throws UsageError for fewer than 2 rows.
CondensedDistanceMatrix pairwise(const DataMatrix& x, AggregationOrder q);

// Distances from every test row to every training row.
CrossDistanceMatrix cross(const DataMatrix& test, const DataMatrix& train, AggregationOrder q);

}  // namespace hddist
