// Copyright (c) 2026 The prfem authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>
#include <memory>

#include "prfem/assembly.hpp"

namespace prfem {

inline constexpr double kResidualTolerance = 1e-11;

struct SolverReport {
  double relative_residual = 0.0;
  bool factorization_ok = false;
  int dimension = 0;
};

/// Factorized saddle-point operator
///
///   [ alpha*M + nu*A (+N)   -B^T   0 ] [u ]   [ f ]
///   [ -B                     0     c ] [p ] = [ g ]
///   [ 0                      c^T   0 ] [mu]   [ 0 ]
///
/// with Dirichlet velocity rows/columns symmetrically eliminated. The
/// mean-constraint multiplier pins the pressure constant; the system is
/// symmetric unless a convection block is set. Factorized once; solves
/// accept per-call right-hand sides and boundary data.
class SaddleOperator {
 public:
  SaddleOperator(const SaddleSystem& sys, const DofMap& dofmap, double alpha,
                 double nu, const CsrMatrix* convection = nullptr);

  /// Re-factorizes with a new convection block (alpha/nu unchanged).
  void set_convection(const SaddleSystem& sys, const DofMap& dofmap,
                      const CsrMatrix& convection);

  bool factorization_ok() const { return factorization_ok_; }
  int dimension() const { return dim_; }

  /// Solves for [velocity; pressure; multiplier]. `rhs_velocity` and
  /// `rhs_pressure` are the uneliminated right-hand sides (Dirichlet rows
  /// ignored); `dirichlet` holds boundary values in dofmap.dirichlet order.
  /// One step of iterative refinement is applied; the reported residual is
  /// measured on the eliminated system. Throws if the factorization failed
  /// or the residual exceeds kResidualTolerance.
  Eigen::VectorXd solve(const Eigen::VectorXd& rhs_velocity,
                        const Eigen::VectorXd& rhs_pressure,
                        const Eigen::VectorXd& dirichlet,
                        SolverReport* report = nullptr) const;

 private:
  void factorize(const SaddleSystem& sys, const DofMap& dofmap,
                 const CsrMatrix* convection);

  int n_velocity_ = 0;
  int n_pressure_ = 0;
  int dim_ = 0;
  double alpha_ = 0.0;
  double nu_ = 0.0;
  std::vector<DirichletDof> dirichlet_;
  DirichletSystem eliminated_;
  Eigen::SparseMatrix<double> matrix_;
  Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu_;
  bool factorization_ok_ = false;
};

/// One-shot convenience wrapper around SaddleOperator.
std::pair<DiscreteField, SolverReport> solve_saddle(
    const SaddleSystem& sys, const DofMap& dofmap, double alpha, double nu,
    const CsrMatrix* convection, const Eigen::VectorXd& rhs_velocity,
    const Eigen::VectorXd& rhs_pressure, const Eigen::VectorXd& dirichlet);

}  // namespace prfem
