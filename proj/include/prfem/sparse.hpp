// Copyright (c) 2026 The prfem authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <vector>

namespace prfem {

struct Triplet {
  int row = 0;
  int col = 0;
  double value = 0.0;
};

/// Compressed-row sparse matrix. Column indices are sorted and unique per
/// row; explicit zeros are kept, non-finite values rejected.
struct CsrMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<int> row_offsets;  // size rows + 1
  std::vector<int> col_indices;
  std::vector<double> values;

  /// Builds from (row, col, value) entries, summing duplicates. Duplicates
  /// are accumulated in input order, so identical input gives bit-identical
  /// results.
  static CsrMatrix from_triplets(int rows, int cols,
                                 const std::vector<Triplet>& entries);

  int nnz() const { return static_cast<int>(values.size()); }
  double value_at(int row, int col) const;

  Eigen::VectorXd operator*(const Eigen::VectorXd& x) const;
  /// y = A^T x
  Eigen::VectorXd transpose_times(const Eigen::VectorXd& x) const;
  /// x^T A y
  double inner(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;
};

}  // namespace prfem
