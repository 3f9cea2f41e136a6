#include "hddist/evaluate.hpp"

#include <map>

#include "hddist/error.hpp"

namespace hddist {

namespace {
double pairs(std::size_t m) {
  const auto x = static_cast<double>(m);
  return x * (x - 1.0) / 2.0;
}
}  // namespace

ContingencyTable contingency(const LabelVector& u, const LabelVector& v) {
  if (u.size() != v.size()) {
    throw UsageError("contingency: label vectors of length " + std::to_string(u.size()) + " and " +
                     std::to_string(v.size()));
  }
  ContingencyTable t;
  const auto ku = static_cast<std::size_t>(u.k());
  const auto kv = static_cast<std::size_t>(v.k());
  t.counts.assign(ku, std::vector<std::size_t>(kv, 0));
  t.row_sums.assign(ku, 0);
  t.col_sums.assign(kv, 0);
  for (std::size_t i = 0; i < u.size(); ++i) {
    const auto a = static_cast<std::size_t>(u[i] - 1);
    const auto b = static_cast<std::size_t>(v[i] - 1);
    ++t.counts[a][b];
    ++t.row_sums[a];
    ++t.col_sums[b];
  }
  t.total = u.size();
  return t;
}

bool same_partition(const LabelVector& u, const LabelVector& v) {
  if (u.size() != v.size()) return false;
  std::map<int, int> forward, backward;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const auto [f, f_new] = forward.emplace(u[i], v[i]);
    const auto [b, b_new] = backward.emplace(v[i], u[i]);
    if (f->second != v[i] || b->second != u[i]) return false;
  }
  return true;
}

double adjusted_rand_index(const LabelVector& u, const LabelVector& v) {
  if (u.size() < 2) throw UsageError("adjusted_rand_index: need at least 2 objects");
  const auto t = contingency(u, v);
  double index = 0.0;
  for (const auto& row : t.counts)
    for (std::size_t c : row) index += pairs(c);
  double sum_rows = 0.0, sum_cols = 0.0;
  for (std::size_t a : t.row_sums) sum_rows += pairs(a);
  for (std::size_t b : t.col_sums) sum_cols += pairs(b);
  // Scaled by the total pair count so small cases stay exact in floating point.
  const double total = pairs(t.total);
  const double numerator = total * index - sum_rows * sum_cols;
  const double denominator = total * 0.5 * (sum_rows + sum_cols) - sum_rows * sum_cols;
  if (denominator == 0.0) return same_partition(u, v) ? 1.0 : 0.0;
  return numerator / denominator;
}

double misclassification_rate(const LabelVector& pred, const LabelVector& truth) {
  if (pred.size() != truth.size()) {
    throw UsageError("misclassification_rate: " + std::to_string(pred.size()) + " predictions for " +
                     std::to_string(truth.size()) + " labels");
  }
  if (pred.size() == 0) throw UsageError("misclassification_rate: empty label vectors");
  std::size_t wrong = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) wrong += pred[i] != truth[i] ? 1 : 0;
  return static_cast<double>(wrong) / static_cast<double>(pred.size());
}

}  // namespace hddist
