#include <algorithm>
#include <limits>
#include <numeric>

#include "hddist/error.hpp"
#include "hddist/learn.hpp"

namespace hddist {

std::string_view to_string(Linkage l) { return l == Linkage::complete ? "complete" : "average"; }

Linkage parse_linkage(std::string_view name) {
  if (name == "complete") return Linkage::complete;
  if (name == "average") return Linkage::average;
  throw UsageError("unknown linkage '" + std::string(name) + "'");
}

Dendrogram linkage(const CondensedDistanceMatrix& d, Linkage method) {
  const std::size_t n = d.n();
  if (n < 2) throw UsageError("linkage: need at least 2 objects");

  // Slot-indexed n x n table. complete: max distance; average: sum of pairwise
  // distances, divided by the size product when compared.
  std::vector<double> table(n * n, 0.0);
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = 0; i < j; ++i) table[i * n + j] = table[j * n + i] = d(i, j);

  std::vector<std::size_t> active(n);  // node ids, ascending
  std::iota(active.begin(), active.end(), std::size_t{0});
  std::vector<std::size_t> slot(2 * n - 1), size(2 * n - 1, 1);
  std::iota(slot.begin(), slot.begin() + static_cast<std::ptrdiff_t>(n), std::size_t{0});

  auto value = [&](std::size_t a, std::size_t b) {
    const double t = table[slot[a] * n + slot[b]];
    if (method == Linkage::complete) return t;
    return t / (static_cast<double>(size[a]) * static_cast<double>(size[b]));
  };

  Dendrogram dend;
  dend.n = n;
  dend.merges.reserve(n - 1);
  for (std::size_t step = 0; step + 1 < n; ++step) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_a = 0, best_b = 1;
    for (std::size_t a = 0; a < active.size(); ++a) {
      for (std::size_t b = a + 1; b < active.size(); ++b) {
        const double v = value(active[a], active[b]);
        if (v < best) {
          best = v;
          best_a = a;
          best_b = b;
        }
      }
    }
    const std::size_t left = active[best_a];
    const std::size_t right = active[best_b];
    const std::size_t node = n + step;
    const std::size_t s = slot[left];
    const std::size_t r = slot[right];
    for (std::size_t other : active) {
      if (other == left || other == right) continue;
      const std::size_t o = slot[other];
      const double merged = method == Linkage::complete ? std::max(table[s * n + o], table[r * n + o])
                                                        : table[s * n + o] + table[r * n + o];
      table[s * n + o] = table[o * n + s] = merged;
    }
    slot[node] = s;
    size[node] = size[left] + size[right];
    dend.merges.push_back({left, right, best, size[node]});

    active.erase(active.begin() + static_cast<std::ptrdiff_t>(best_b));
    active.erase(active.begin() + static_cast<std::ptrdiff_t>(best_a));
    active.push_back(node);
  }
  return dend;
}

LabelVector cut_tree(const Dendrogram& dendrogram, std::size_t k) {
  const std::size_t n = dendrogram.n;
  if (k < 1 || k > n) throw UsageError("cut_tree: need 1 <= k <= n, got k=" + std::to_string(k));
  if (dendrogram.merges.size() + 1 != n) throw UsageError("cut_tree: dendrogram must have n - 1 merges");

  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  // Any leaf below a node represents it.
  std::vector<std::size_t> leaf_of(2 * n - 1);
  std::iota(leaf_of.begin(), leaf_of.begin() + static_cast<std::ptrdiff_t>(n), std::size_t{0});
  for (std::size_t s = 0; s < n - 1; ++s) leaf_of[n + s] = leaf_of[dendrogram.merges[s].left];

  for (std::size_t s = 0; s < n - k; ++s) {
    const auto& m = dendrogram.merges[s];
    const std::size_t a = find(leaf_of[m.left]);
    const std::size_t b = find(leaf_of[m.right]);
    parent[std::max(a, b)] = std::min(a, b);
  }

  std::vector<int> label_of_root(n, 0);
  std::vector<int> labels(n);
  int next = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t root = find(i);
    if (label_of_root[root] == 0) label_of_root[root] = ++next;
    labels[i] = label_of_root[root];
  }
  return LabelVector(std::move(labels), static_cast<int>(k));
}

}  // namespace hddist
