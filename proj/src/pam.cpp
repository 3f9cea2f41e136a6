#include <algorithm>
#include <limits>

#include "hddist/error.hpp"
#include "hddist/learn.hpp"

namespace hddist {

namespace {

// Relative slack for accepting a swap; new costs are full re-summations, so
// equal-cost configurations can differ in the last bits.
constexpr double kSwapTolerance = 1e-13;

class FullMatrix {
 public:
  explicit FullMatrix(const CondensedDistanceMatrix& d) : n_(d.n()), v_(d.n() * d.n(), 0.0) {
    for (std::size_t j = 1; j < n_; ++j)
      for (std::size_t i = 0; i < j; ++i) v_[i * n_ + j] = v_[j * n_ + i] = d(i, j);
  }
  double operator()(std::size_t i, std::size_t j) const { return v_[i * n_ + j]; }

 private:
  std::size_t n_;
  std::vector<double> v_;
};

double cost_of(const FullMatrix& dm, std::size_t n, const std::vector<std::size_t>& medoids) {
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t m : medoids) best = std::min(best, dm(i, m));
    total += best;
  }
  return total;
}

}  // namespace

double medoid_cost(const CondensedDistanceMatrix& d, const std::vector<std::size_t>& medoids) {
  if (medoids.empty()) throw UsageError("medoid_cost: empty medoid set");
  for (std::size_t m : medoids)
    if (m >= d.n()) throw UsageError("medoid_cost: medoid index out of range");
  return cost_of(FullMatrix(d), d.n(), medoids);
}

Clustering pam(const CondensedDistanceMatrix& d, std::size_t k) {
  const std::size_t n = d.n();
  if (k < 2 || k >= n) {
    throw UsageError("pam: need 2 <= k < n, got k=" + std::to_string(k) + " n=" + std::to_string(n));
  }
  const FullMatrix dm(d);
  std::vector<char> is_medoid(n, 0);
  std::vector<std::size_t> medoids;
  medoids.reserve(k);

  // BUILD: the most central object first, then greedy cost reduction.
  {
    std::size_t best = 0;
    double best_total = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < n; ++c) {
      double total = 0.0;
      for (std::size_t i = 0; i < n; ++i) total += dm(i, c);
      if (total < best_total) {
        best_total = total;
        best = c;
      }
    }
    medoids.push_back(best);
    is_medoid[best] = 1;
  }
  std::vector<double> nearest(n);
  for (std::size_t i = 0; i < n; ++i) nearest[i] = dm(i, medoids.front());
  while (medoids.size() < k) {
    std::size_t best = n;
    double best_gain = -1.0;
    for (std::size_t c = 0; c < n; ++c) {
      if (is_medoid[c]) continue;
      double gain = 0.0;
      for (std::size_t i = 0; i < n; ++i) gain += std::max(0.0, nearest[i] - dm(i, c));
      if (gain > best_gain) {
        best_gain = gain;
        best = c;
      }
    }
    medoids.push_back(best);
    is_medoid[best] = 1;
    for (std::size_t i = 0; i < n; ++i) nearest[i] = std::min(nearest[i], dm(i, best));
  }
  std::sort(medoids.begin(), medoids.end());

  // SWAP: best improvement over all (medoid, non-medoid) pairs.
  double cost = cost_of(dm, n, medoids);
  std::size_t swaps = 0;
  std::vector<double> first(n), second(n);
  std::vector<std::size_t> first_pos(n);
  while (true) {
    for (std::size_t i = 0; i < n; ++i) {
      first[i] = second[i] = std::numeric_limits<double>::infinity();
      first_pos[i] = 0;
      for (std::size_t pos = 0; pos < k; ++pos) {
        const double v = dm(i, medoids[pos]);
        if (v < first[i]) {
          second[i] = first[i];
          first[i] = v;
          first_pos[i] = pos;
        } else if (v < second[i]) {
          second[i] = v;
        }
      }
    }
    double best_cost = cost;
    std::size_t best_pos = k;
    std::size_t best_h = n;
    for (std::size_t pos = 0; pos < k; ++pos) {
      for (std::size_t h = 0; h < n; ++h) {
        if (is_medoid[h]) continue;
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          const double others = first_pos[i] == pos ? second[i] : first[i];
          total += std::min(others, dm(i, h));
        }
        if (total < best_cost) {
          best_cost = total;
          best_pos = pos;
          best_h = h;
        }
      }
    }
    if (best_pos == k || !(best_cost < cost - kSwapTolerance * cost)) break;
    is_medoid[medoids[best_pos]] = 0;
    is_medoid[best_h] = 1;
    medoids[best_pos] = best_h;
    std::sort(medoids.begin(), medoids.end());
    cost = cost_of(dm, n, medoids);
    ++swaps;
  }

  std::vector<int> labels(n);
  double objective = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t assigned = 0;
    const auto own = std::find(medoids.begin(), medoids.end(), i);
    if (own != medoids.end()) {
      assigned = static_cast<std::size_t>(own - medoids.begin());
    } else {
      for (std::size_t pos = 1; pos < k; ++pos)
        if (dm(i, medoids[pos]) < dm(i, medoids[assigned])) assigned = pos;
    }
    labels[i] = static_cast<int>(assigned) + 1;
    objective += dm(i, medoids[assigned]);
  }

  Clustering out;
  out.labels = LabelVector(std::move(labels), static_cast<int>(k));
  out.medoids = std::move(medoids);
  out.objective = objective;
  out.swaps = swaps;
  return out;
}

}  // namespace hddist
