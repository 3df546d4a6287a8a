// Copyright (c) 2026 The prfem authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <utility>

#include "prfem/linsolve.hpp"
#include "prfem/problems.hpp"

namespace prfem {

struct ConvergenceRow {
  double nu = 0.0;
  double h = 0.0;
  double error_l2 = 0.0;
  std::optional<double> rate;  // absent on the coarsest level
};

/// Rates log(e_coarse/e_fine)/log(h_coarse/h_fine) for successive rows.
std::vector<ConvergenceRow> compute_rates(
    const std::vector<std::pair<double, double>>& h_and_error, double nu);

/// L2 norm of (u_h - u)(t), elementwise degree-8 quadrature.
double l2_error(const Mesh& mesh, const DofMap& dofmap,
                const Eigen::VectorXd& velocity, const VelocityFn& exact,
                double t);

/// Broken H1 seminorm of the velocity error.
double h1_seminorm_error(const Mesh& mesh, const DofMap& dofmap,
                         const Eigen::VectorXd& velocity,
                         const TensorFn& exact_gradient, double t);

double pressure_l2_error(const Mesh& mesh, const DofMap& dofmap,
                         const Eigen::VectorXd& pressure,
                         const ScalarFn& exact, double t);

/// Discrete Helmholtz-Hodge projection into the discretely divergence-free
/// space: (P(w), v) = (w, v) for all discretely divergence-free v, via the
/// mass-based saddle solve. Boundary data defaults to zero (the projection
/// of the homogeneous-Dirichlet setting); pass `boundary` to project in an
/// inhomogeneous affine subspace. The returned pressure block holds the
/// constraint multiplier.
DiscreteField helmholtz_projection(const Mesh& mesh, const DofMap& dofmap,
                                   const SaddleSystem& sys,
                                   const VelocityFn& w, double t,
                                   const VelocityFn* boundary = nullptr);

/// Overload for an already-discrete field; boundary data is taken from the
/// field's own Dirichlet dof values, so members of the constrained space
/// are reproduced.
DiscreteField helmholtz_projection(const Mesh& mesh, const DofMap& dofmap,
                                   const SaddleSystem& sys,
                                   const Eigen::VectorXd& w);

/// Discrete Stokes projection: gradients matched against all discretely
/// divergence-free test functions, via the stiffness-based saddle solve.
DiscreteField stokes_projection(const Mesh& mesh, const DofMap& dofmap,
                                const SaddleSystem& sys,
                                const TensorFn& gradient_of_w, double t,
                                const VelocityFn* boundary = nullptr);

/// L2-best approximation of p in the discrete pressure space.
Eigen::VectorXd pressure_l2_projection(const Mesh& mesh, const DofMap& dofmap,
                                       const ScalarFn& p, double t);

/// Lagrange interpolant of p into the continuous P1 (sub)space of the
/// pressure space, returned as vertex coefficients. Rejects P0 pressure
/// (no H1-conforming subspace) with std::invalid_argument.
Eigen::VectorXd pressure_lagrange_interpolant(const Mesh& mesh,
                                              const ElementPair& pair,
                                              const ScalarFn& p, double t);

/// || grad(p - L_h p) ||_0 for a vertex-based P1 interpolant.
double p1_gradient_error(const Mesh& mesh,
                         const Eigen::VectorXd& vertex_coeffs,
                         const VelocityFn& grad_p, double t);

/// || u_h - P_h(u) ||_0, the supercloseness quantity.
double supercloseness_error(const Mesh& mesh, const DofMap& dofmap,
                            const SaddleSystem& sys,
                            const Eigen::VectorXd& u_h,
                            const VelocityFn& exact, double t,
                            const VelocityFn* boundary = nullptr);

/// Numerical evaluation of the a-priori velocity error bounds: runs BDF3
/// with projected initial data, then compares
///   lhs = ||e(T)||^2 + nu int ||grad e||^2,   e = u_h - P_h(u)
/// against the pressure-robust bound (Scott-Vogelius)
///   rhs = nu int ||grad(S_h(u) - P_h(u))||^2
/// or the classical bound (Taylor-Hood)
///   rhs = e nu int ||grad(S_h u - P_h u)||^2 + e T max_t ||grad(p - L_h p)||^2.
/// Time integrals use the trapezoid rule over the stored steps.
struct TheoremCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  double final_error_l2 = 0.0;
  bool holds = false;
};

TheoremCheck theorem_bound_check(ElementPairName name,
                                 const FlowProblem& problem, int n, double dt);

}  // namespace prfem
