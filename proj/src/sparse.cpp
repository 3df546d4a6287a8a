// Copyright (c) 2026 The prfem authors
// SPDX-License-Identifier: Apache-2.0

#include "prfem/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace prfem {

CsrMatrix CsrMatrix::from_triplets(int rows, int cols,
                                   const std::vector<Triplet>& entries) {
  std::vector<int> order(entries.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (entries[a].row != entries[b].row) return entries[a].row < entries[b].row;
    return entries[a].col < entries[b].col;
  });

  CsrMatrix m;
  m.rows = rows;
  m.cols = cols;
  m.row_offsets.assign(rows + 1, 0);
  m.col_indices.reserve(entries.size());
  m.values.reserve(entries.size());

  int prev_row = -1, prev_col = -1;
  for (int idx : order) {
    const Triplet& t = entries[idx];
    if (t.row < 0 || t.row >= rows || t.col < 0 || t.col >= cols)
      throw std::invalid_argument("CsrMatrix: triplet index out of range");
    if (!std::isfinite(t.value))
      throw std::invalid_argument("CsrMatrix: non-finite value");
    if (t.row == prev_row && t.col == prev_col) {
      m.values.back() += t.value;
    } else {
      m.col_indices.push_back(t.col);
      m.values.push_back(t.value);
      ++m.row_offsets[t.row + 1];
      prev_row = t.row;
      prev_col = t.col;
    }
  }
  for (int r = 0; r < rows; ++r) m.row_offsets[r + 1] += m.row_offsets[r];
  return m;
}

double CsrMatrix::value_at(int row, int col) const {
  for (int k = row_offsets[row]; k < row_offsets[row + 1]; ++k)
    if (col_indices[k] == col) return values[k];
  return 0.0;
}

Eigen::VectorXd CsrMatrix::operator*(const Eigen::VectorXd& x) const {
  Eigen::VectorXd y = Eigen::VectorXd::Zero(rows);
  for (int r = 0; r < rows; ++r) {
    double sum = 0.0;
    for (int k = row_offsets[r]; k < row_offsets[r + 1]; ++k)
      sum += values[k] * x[col_indices[k]];
    y[r] = sum;
  }
  return y;
}

Eigen::VectorXd CsrMatrix::transpose_times(const Eigen::VectorXd& x) const {
  Eigen::VectorXd y = Eigen::VectorXd::Zero(cols);
  for (int r = 0; r < rows; ++r)
    for (int k = row_offsets[r]; k < row_offsets[r + 1]; ++k)
      y[col_indices[k]] += values[k] * x[r];
  return y;
}

double CsrMatrix::inner(const Eigen::VectorXd& x,
                        const Eigen::VectorXd& y) const {
  double sum = 0.0;
  for (int r = 0; r < rows; ++r) {
    double row_sum = 0.0;
    for (int k = row_offsets[r]; k < row_offsets[r + 1]; ++k)
      row_sum += values[k] * y[col_indices[k]];
    sum += x[r] * row_sum;
  }
  return sum;
}

}  // namespace prfem
