#include "hddist/quantile.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "hddist/error.hpp"

namespace hddist {

double quantile_sorted(std::span<const double> sorted, double prob) {
  if (sorted.empty()) throw UsageError("quantile: empty input");
  if (!(prob >= 0.0 && prob <= 1.0)) throw UsageError("quantile: prob must lie in [0, 1]");
  const std::size_t n = sorted.size();
  // 0-based position of the lower order statistic.
  const double pos = static_cast<double>(n - 1) * prob;
  const double lo_pos = std::floor(pos);
  const auto lo = static_cast<std::size_t>(lo_pos);
  const double frac = pos - lo_pos;
  if (lo + 1 >= n || frac == 0.0) return sorted[lo];
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

double quantile(std::span<const double> values, double prob) {
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  return quantile_sorted(sorted, prob);
}

double median(std::span<const double> values) { return quantile(values, 0.5); }

}  // namespace hddist
