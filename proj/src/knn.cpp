#include <algorithm>
#include <numeric>

#include "hddist/error.hpp"
#include "hddist/learn.hpp"

namespace hddist {

LabelVector knn_classify(const CrossDistanceMatrix& dx, const LabelVector& train_labels, std::size_t k) {
  const std::size_t n_train = dx.n_train();
  if (train_labels.size() != n_train) {
    throw UsageError("knn_classify: " + std::to_string(train_labels.size()) + " training labels for " +
                     std::to_string(n_train) + " training objects");
  }
  if (k < 1 || k > n_train) throw UsageError("knn_classify: need 1 <= k <= n_train, got k=" + std::to_string(k));

  const auto n_classes = static_cast<std::size_t>(train_labels.k());
  std::vector<int> out(dx.n_test());
  std::vector<std::size_t> order(n_train);
  std::vector<std::size_t> votes(n_classes);
  std::vector<double> dist_sum(n_classes);
  for (std::size_t a = 0; a < dx.n_test(); ++a) {
    const auto row = dx.row(a);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(),
                      [&](std::size_t x, std::size_t y) { return row[x] < row[y] || (row[x] == row[y] && x < y); });
    std::fill(votes.begin(), votes.end(), 0);
    std::fill(dist_sum.begin(), dist_sum.end(), 0.0);
    for (std::size_t r = 0; r < k; ++r) {
      const auto c = static_cast<std::size_t>(train_labels[order[r]] - 1);
      ++votes[c];
      dist_sum[c] += row[order[r]];
    }
    std::size_t best = 0;
    for (std::size_t c = 1; c < n_classes; ++c) {
      if (votes[c] > votes[best] || (votes[c] == votes[best] && votes[c] > 0 && dist_sum[c] < dist_sum[best])) {
        best = c;
      }
    }
    out[a] = static_cast<int>(best) + 1;
  }
  return LabelVector(std::move(out), train_labels.k());
}

}  // namespace hddist
