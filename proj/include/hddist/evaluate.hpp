#pragma once

#include <vector>

#include "hddist/core.hpp"

namespace hddist {

struct ContingencyTable {
  std::vector<std::vector<std::size_t>> counts;  // rows: classes of u, columns: classes of v
  std::vector<std::size_t> row_sums;
  std::vector<std::size_t> col_sums;
  std::size_t total = 0;
};

// Throws UsageError on length mismatch.
ContingencyTable contingency(const LabelVector& u, const LabelVector& v);

// Hubert-Arabie adjusted Rand index. When the expected and maximal index
// coincide (e.g. both partitions all singletons) the value is 1 if the two
// partitions are equal up to renaming, 0 otherwise.
// Throws UsageError for length mismatch or fewer than 2 objects.
double adjusted_rand_index(const LabelVector& u, const LabelVector& v);

// True when u and v induce the same set partition.
bool same_partition(const LabelVector& u, const LabelVector& v);

// Fraction of positions with pred != truth (labels compared literally).
double misclassification_rate(const LabelVector& pred, const LabelVector& truth);

}  // namespace hddist
