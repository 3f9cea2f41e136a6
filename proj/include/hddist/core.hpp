#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace hddist {

// n_rows observations by n_cols variables. Storage is column-major: every
// standardisation is a per-variable pass, so each variable is contiguous.
class DataMatrix {
 public:
  DataMatrix() = default;

  // Zero-filled matrix.
  DataMatrix(std::size_t n_rows, std::size_t n_cols);

  // Takes column-major values; throws UsageError on size mismatch or a non-finite entry.
  static DataMatrix from_columns(std::size_t n_rows, std::size_t n_cols, std::vector<double> values);
  static DataMatrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t n_rows() const { return n_rows_; }
  std::size_t n_cols() const { return n_cols_; }

  double operator()(std::size_t row, std::size_t col) const { return values_[col * n_rows_ + row]; }
  double& operator()(std::size_t row, std::size_t col) { return values_[col * n_rows_ + row]; }

  std::span<const double> column(std::size_t col) const {
    return {values_.data() + col * n_rows_, n_rows_};
  }
  std::span<double> column(std::size_t col) { return {values_.data() + col * n_rows_, n_rows_}; }

  std::vector<double> row(std::size_t r) const;

  // Row-major copy, used by the distance kernels.
  std::vector<double> row_major() const;

  std::span<const double> values() const { return values_; }

  bool operator==(const DataMatrix&) const = default;

 private:
  std::size_t n_rows_ = 0;
  std::size_t n_cols_ = 0;
  std::vector<double> values_;
};

// Class labels in {1..k}. The strict factory additionally requires every class
// to occur; predictions from a classifier may legitimately miss a class, so the
// two-argument constructor only range-checks.
class LabelVector {
 public:
  LabelVector() = default;
  LabelVector(std::vector<int> labels, int k);

  // k = max label; every class 1..k must be present.
  static LabelVector from_complete(std::vector<int> labels);

  std::size_t size() const { return labels_.size(); }
  int k() const { return k_; }
  int operator[](std::size_t i) const { return labels_[i]; }
  const std::vector<int>& labels() const { return labels_; }

  // Count of each class, index 0 is class 1.
  std::vector<std::size_t> class_sizes() const;

  bool operator==(const LabelVector&) const = default;

 private:
  std::vector<int> labels_;
  int k_ = 0;
};

// Storage index of the unordered pair (i, j), i < j < n: j(j-1)/2 + i.
// Throws IndexError for i >= j or j >= n.
std::size_t condensed_index(std::size_t i, std::size_t j, std::size_t n);

inline std::size_t condensed_size(std::size_t n) { return n < 2 ? 0 : n * (n - 1) / 2; }

class CondensedDistanceMatrix {
 public:
  CondensedDistanceMatrix() = default;
  explicit CondensedDistanceMatrix(std::size_t n) : n_(n), entries_(condensed_size(n), 0.0) {}
  // Throws UsageError when entries.size() != n(n-1)/2 or an entry is negative/non-finite.
  CondensedDistanceMatrix(std::size_t n, std::vector<double> entries);

  std::size_t n() const { return n_; }

  // Symmetric accessor; d(i, i) == 0.
  double operator()(std::size_t i, std::size_t j) const {
    if (i == j) return 0.0;
    if (i > j) std::swap(i, j);
    return entries_[j * (j - 1) / 2 + i];
  }

  std::span<const double> entries() const { return entries_; }
  std::span<double> mutable_entries() { return entries_; }

  bool operator==(const CondensedDistanceMatrix&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> entries_;
};

// Row a holds distances from test point a to every training point.
class CrossDistanceMatrix {
 public:
  CrossDistanceMatrix() = default;
  CrossDistanceMatrix(std::size_t m, std::size_t n) : m_(m), n_(n), entries_(m * n, 0.0) {}

  std::size_t n_test() const { return m_; }
  std::size_t n_train() const { return n_; }

  double operator()(std::size_t a, std::size_t i) const { return entries_[a * n_ + i]; }
  double& operator()(std::size_t a, std::size_t i) { return entries_[a * n_ + i]; }

  std::span<const double> row(std::size_t a) const { return {entries_.data() + a * n_, n_}; }

 private:
  std::size_t m_ = 0;
  std::size_t n_ = 0;
  std::vector<double> entries_;
};

}  // namespace hddist
