// Copyright (c) 2026 The prfem authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "prfem/spaces.hpp"

namespace prfem {

// Quadrature degrees: 6 integrates every mass/stiffness/divergence
// integrand of the supported families exactly; convection with bubbles
// reaches degree 8; error norms use 8 to keep trigonometric exact
// solutions from polluting measured rates.
inline constexpr int kAssemblyQuadDegree = 6;
inline constexpr int kConvectionQuadDegree = 8;
inline constexpr int kErrorQuadDegree = 8;

/// Assembled blocks of the discrete saddle problem. The viscosity is not
/// baked in: systems are combined as alpha*mass + nu*stiffness at solve
/// time. `divergence` has pressure rows and velocity columns; for the
/// nonconforming pair all forms are elementwise (broken).
struct SaddleSystem {
  CsrMatrix mass;             // velocity x velocity
  CsrMatrix stiffness;        // velocity x velocity
  CsrMatrix divergence;       // pressure x velocity
  Eigen::VectorXd mean_row;   // (q, 1) per pressure dof
};

CsrMatrix assemble_mass(const Mesh& mesh, const DofMap& dofmap);
CsrMatrix assemble_stiffness(const Mesh& mesh, const DofMap& dofmap);
CsrMatrix assemble_divergence(const Mesh& mesh, const DofMap& dofmap);
Eigen::VectorXd assemble_mean_row(const Mesh& mesh, const DofMap& dofmap);
SaddleSystem assemble_saddle_system(const Mesh& mesh, const DofMap& dofmap);

/// (f(.,t), phi_i) with the given quadrature degree.
Eigen::VectorXd assemble_load(const Mesh& mesh, const DofMap& dofmap,
                              const VelocityFn& f, double t,
                              int quad_degree = kAssemblyQuadDegree);

/// N_ij = ((w . grad) phi_j, phi_i) for an advecting discrete velocity w.
CsrMatrix assemble_convection(const Mesh& mesh, const DofMap& dofmap,
                              const Eigen::VectorXd& advecting_velocity);

/// Pressure-space mass matrix (for L2 pressure projections).
CsrMatrix assemble_pressure_mass(const Mesh& mesh, const DofMap& dofmap);

/// Scalar-field mass/stiffness on an arbitrary layout (tests, eigenvalue
/// checks, pressure blocks).
CsrMatrix assemble_scalar_mass(const Mesh& mesh, const ScalarLayout& layout);
CsrMatrix assemble_scalar_stiffness(const Mesh& mesh,
                                    const ScalarLayout& layout);

/// Per-cell L2 norm of the divergence of a discrete velocity field:
/// sqrt(integral over cell of (div u_h)^2).
std::vector<double> cellwise_divergence_norms(const Mesh& mesh,
                                              const DofMap& dofmap,
                                              const Eigen::VectorXd& velocity);

}  // namespace prfem
