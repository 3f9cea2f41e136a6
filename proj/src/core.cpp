#include "hddist/core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hddist/error.hpp"

namespace hddist {

DataMatrix::DataMatrix(std::size_t n_rows, std::size_t n_cols)
    : n_rows_(n_rows), n_cols_(n_cols), values_(n_rows * n_cols, 0.0) {}

DataMatrix DataMatrix::from_columns(std::size_t n_rows, std::size_t n_cols, std::vector<double> values) {
  if (values.size() != n_rows * n_cols) {
    throw UsageError("DataMatrix: expected " + std::to_string(n_rows * n_cols) + " values, got " +
                     std::to_string(values.size()));
  }
  for (std::size_t idx = 0; idx < values.size(); ++idx) {
    if (!std::isfinite(values[idx])) {
      throw UsageError("DataMatrix: non-finite value at row " + std::to_string(idx % n_rows) +
                       ", column " + std::to_string(idx / n_rows));
    }
  }
  DataMatrix m;
  m.n_rows_ = n_rows;
  m.n_cols_ = n_cols;
  m.values_ = std::move(values);
  return m;
}

DataMatrix DataMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  const std::size_t n = rows.size();
  const std::size_t p = n == 0 ? 0 : rows.front().size();
  std::vector<double> values(n * p);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != p) {
      throw UsageError("DataMatrix: row " + std::to_string(i) + " has " + std::to_string(rows[i].size()) +
                       " columns, expected " + std::to_string(p));
    }
    for (std::size_t j = 0; j < p; ++j) values[j * n + i] = rows[i][j];
  }
  return from_columns(n, p, std::move(values));
}

std::vector<double> DataMatrix::row(std::size_t r) const {
  std::vector<double> out(n_cols_);
  for (std::size_t j = 0; j < n_cols_; ++j) out[j] = (*this)(r, j);
  return out;
}

std::vector<double> DataMatrix::row_major() const {
  std::vector<double> out(values_.size());
  for (std::size_t j = 0; j < n_cols_; ++j) {
    const double* col = values_.data() + j * n_rows_;
    for (std::size_t i = 0; i < n_rows_; ++i) out[i * n_cols_ + j] = col[i];
  }
  return out;
}

LabelVector::LabelVector(std::vector<int> labels, int k) : labels_(std::move(labels)), k_(k) {
  if (k < 1) throw UsageError("LabelVector: k must be >= 1");
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] < 1 || labels_[i] > k) {
      throw UsageError("LabelVector: label " + std::to_string(labels_[i]) + " at position " +
                       std::to_string(i) + " outside 1.." + std::to_string(k));
    }
  }
}

LabelVector LabelVector::from_complete(std::vector<int> labels) {
  if (labels.empty()) throw UsageError("LabelVector: empty label sequence");
  const int k = *std::max_element(labels.begin(), labels.end());
  LabelVector out(std::move(labels), k);
  const auto sizes = out.class_sizes();
  for (std::size_t c = 0; c < sizes.size(); ++c) {
    if (sizes[c] == 0) throw UsageError("LabelVector: class " + std::to_string(c + 1) + " is empty");
  }
  return out;
}

std::vector<std::size_t> LabelVector::class_sizes() const {
  std::vector<std::size_t> sizes(static_cast<std::size_t>(k_), 0);
  for (int l : labels_) ++sizes[static_cast<std::size_t>(l - 1)];
  return sizes;
}

std::size_t condensed_index(std::size_t i, std::size_t j, std::size_t n) {
  if (i >= j || j >= n) {
    throw IndexError("condensed_index: need i < j < n, got i=" + std::to_string(i) + " j=" + std::to_string(j) +
                     " n=" + std::to_string(n));
  }
  return j * (j - 1) / 2 + i;
}

CondensedDistanceMatrix::CondensedDistanceMatrix(std::size_t n, std::vector<double> entries)
    : n_(n), entries_(std::move(entries)) {
  if (entries_.size() != condensed_size(n)) {
    throw UsageError("CondensedDistanceMatrix: n=" + std::to_string(n) + " needs " +
                     std::to_string(condensed_size(n)) + " entries, got " + std::to_string(entries_.size()));
  }
  for (double d : entries_) {
    if (!(d >= 0.0) || !std::isfinite(d)) throw UsageError("CondensedDistanceMatrix: entries must be finite and >= 0");
  }
}

}  // namespace hddist
