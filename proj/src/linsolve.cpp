// Copyright (c) 2026 The prfem authors
// SPDX-License-Identifier: Apache-2.0

#include "prfem/linsolve.hpp"

#include <stdexcept>

namespace prfem {

namespace {

void append_block(std::vector<Triplet>& out, const CsrMatrix& m,
                  double scale, int row_offset, int col_offset) {
  for (int r = 0; r < m.rows; ++r)
    for (int k = m.row_offsets[r]; k < m.row_offsets[r + 1]; ++k)
      out.push_back({r + row_offset, m.col_indices[k] + col_offset,
                     scale * m.values[k]});
}

}  // namespace

SaddleOperator::SaddleOperator(const SaddleSystem& sys, const DofMap& dofmap,
                               double alpha, double nu,
                               const CsrMatrix* convection)
    : n_velocity_(dofmap.n_velocity_dofs),
      n_pressure_(dofmap.n_pressure_dofs),
      dim_(dofmap.n_velocity_dofs + dofmap.n_pressure_dofs + 1),
      alpha_(alpha),
      nu_(nu),
      dirichlet_(dofmap.dirichlet) {
  factorize(sys, dofmap, convection);
}

void SaddleOperator::set_convection(const SaddleSystem& sys,
                                    const DofMap& dofmap,
                                    const CsrMatrix& convection) {
  factorize(sys, dofmap, &convection);
}

void SaddleOperator::factorize(const SaddleSystem& sys, const DofMap& dofmap,
                               const CsrMatrix* convection) {
  std::vector<Triplet> entries;
  entries.reserve(sys.mass.nnz() + sys.stiffness.nnz() +
                  2 * sys.divergence.nnz() + 2 * n_pressure_ +
                  (convection ? convection->nnz() : 0));
  if (alpha_ != 0.0) append_block(entries, sys.mass, alpha_, 0, 0);
  if (nu_ != 0.0) append_block(entries, sys.stiffness, nu_, 0, 0);
  if (convection) append_block(entries, *convection, 1.0, 0, 0);
  // -B and -B^T blocks keep the Stokes system symmetric with the physical
  // pressure sign.
  append_block(entries, sys.divergence, -1.0, n_velocity_, 0);
  for (int r = 0; r < sys.divergence.rows; ++r)
    for (int k = sys.divergence.row_offsets[r];
         k < sys.divergence.row_offsets[r + 1]; ++k)
      entries.push_back({sys.divergence.col_indices[k], r + n_velocity_,
                         -sys.divergence.values[k]});
  const int mean_col = n_velocity_ + n_pressure_;
  for (int q = 0; q < n_pressure_; ++q) {
    entries.push_back({n_velocity_ + q, mean_col, sys.mean_row[q]});
    entries.push_back({mean_col, n_velocity_ + q, sys.mean_row[q]});
  }

  eliminated_ = apply_dirichlet(entries, dim_, dirichlet_);

  std::vector<Eigen::Triplet<double>> eigen_entries;
  eigen_entries.reserve(eliminated_.matrix.size());
  for (const Triplet& t : eliminated_.matrix)
    eigen_entries.emplace_back(t.row, t.col, t.value);
  matrix_.resize(dim_, dim_);
  matrix_.setFromTriplets(eigen_entries.begin(), eigen_entries.end());
  matrix_.makeCompressed();

  lu_.compute(matrix_);
  factorization_ok_ = (lu_.info() == Eigen::Success);
}

Eigen::VectorXd SaddleOperator::solve(const Eigen::VectorXd& rhs_velocity,
                                      const Eigen::VectorXd& rhs_pressure,
                                      const Eigen::VectorXd& dirichlet,
                                      SolverReport* report) const {
  if (!factorization_ok_)
    throw std::runtime_error(
        "solve_saddle: singular factorization (missing mean constraint or "
        "non-inf-sup dof layout?)");

  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(dim_);
  rhs.head(n_velocity_) = rhs_velocity;
  rhs.segment(n_velocity_, n_pressure_) = rhs_pressure;
  apply_dirichlet_rhs(eliminated_, dirichlet_, dirichlet, rhs);

  Eigen::VectorXd x = lu_.solve(rhs);
  x += lu_.solve(Eigen::VectorXd(rhs - matrix_ * x));  // one refinement step

  const double rhs_norm = rhs.norm();
  const double residual =
      (rhs - matrix_ * x).norm() / (rhs_norm > 0.0 ? rhs_norm : 1.0);
  if (report) {
    report->relative_residual = residual;
    report->factorization_ok = true;
    report->dimension = dim_;
  }
  if (residual > kResidualTolerance)
    throw std::runtime_error("solve_saddle: relative residual " +
                             std::to_string(residual) + " above tolerance");
  return x;
}

std::pair<DiscreteField, SolverReport> solve_saddle(
    const SaddleSystem& sys, const DofMap& dofmap, double alpha, double nu,
    const CsrMatrix* convection, const Eigen::VectorXd& rhs_velocity,
    const Eigen::VectorXd& rhs_pressure, const Eigen::VectorXd& dirichlet) {
  const SaddleOperator op(sys, dofmap, alpha, nu, convection);
  SolverReport report;
  const Eigen::VectorXd x =
      op.solve(rhs_velocity, rhs_pressure, dirichlet, &report);
  DiscreteField field;
  field.velocity = x.head(dofmap.n_velocity_dofs);
  field.pressure = x.segment(dofmap.n_velocity_dofs, dofmap.n_pressure_dofs);
  return {std::move(field), report};
}

}  // namespace prfem
