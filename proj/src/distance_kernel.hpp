#pragma once

// Per-pair arithmetic shared by the parallel and serial distance kernels.

#include <cmath>
#include <cstddef>

namespace hddist::detail {

inline double minkowski_kernel(const double* a, const double* b, std::size_t p, double q) {
  if (q == 1.0) {
    double sum = 0.0;
    for (std::size_t l = 0; l < p; ++l) sum += std::fabs(a[l] - b[l]);
    return sum;
  }
  double largest = 0.0;
  for (std::size_t l = 0; l < p; ++l) largest = std::fmax(largest, std::fabs(a[l] - b[l]));
  if (std::isinf(q) || largest == 0.0) return largest;

  double sum = 0.0;
  if (q == 2.0) {
    for (std::size_t l = 0; l < p; ++l) {
      const double r = std::fabs(a[l] - b[l]) / largest;
      sum += r * r;
    }
    return largest * std::sqrt(sum);
  }
  if (q == 3.0) {
    for (std::size_t l = 0; l < p; ++l) {
      const double r = std::fabs(a[l] - b[l]) / largest;
      sum += r * r * r;
    }
    return largest * std::cbrt(sum);
  }
  if (q == 4.0) {
    for (std::size_t l = 0; l < p; ++l) {
      const double r = std::fabs(a[l] - b[l]) / largest;
      const double r2 = r * r;
      sum += r2 * r2;
    }
    return largest * std::sqrt(std::sqrt(sum));
  }
  for (std::size_t l = 0; l < p; ++l) sum += std::pow(std::fabs(a[l] - b[l]) / largest, q);
  return largest * std::pow(sum, 1.0 / q);
}

}  // namespace hddist::detail
