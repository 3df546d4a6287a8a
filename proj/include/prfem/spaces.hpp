// Copyright (c) 2026 The prfem authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <string>
#include <vector>

#include "prfem/fem_basis.hpp"
#include "prfem/mesh.hpp"
#include "prfem/sparse.hpp"

namespace prfem {

using ScalarFn = std::function<double(Vec2, double)>;
using VelocityFn = std::function<Vec2(Vec2, double)>;
using TensorFn = std::function<Mat2(Vec2, double)>;

enum class ElementPairName { TaylorHood, ScottVogelius, Mini, CrouzeixRaviart };

struct ElementPair {
  ElementPairName name = ElementPairName::TaylorHood;
  Family velocity_family = Family::P2;
  Family pressure_family = Family::P1;
  bool conforming = true;
  bool pressure_continuous = true;
};

ElementPair element_pair(ElementPairName name);
std::string short_name(ElementPairName name);  // "th", "sv", "mini", "cr"
ElementPairName pair_from_name(const std::string& name);

/// Cell-to-global-dof table for one scalar field, with nodal coordinates
/// for interpolation (non-nodal dofs, i.e. bubbles, carry is_nodal=false).
struct ScalarLayout {
  Family family = Family::P1;
  int n_dofs = 0;
  int dofs_per_cell = 0;
  std::vector<int> cell_dofs;  // flat: [cell * dofs_per_cell + local]
  std::vector<Vec2> nodes;     // per dof
  std::vector<bool> is_nodal;  // per dof

  int dof(int cell, int local) const {
    return cell_dofs[cell * dofs_per_cell + local];
  }
};

struct DirichletDof {
  int dof = -1;  // velocity dof index (component-blocked)
  Vec2 node;
  int component = 0;
};

/// Global numbering for one velocity/pressure pair on a mesh. Velocity
/// dofs are component-blocked: x-component dofs come first, then the
/// y-component shifted by the scalar dof count.
struct DofMap {
  ElementPair pair;
  ScalarLayout velocity_scalar;
  ScalarLayout pressure;
  int n_velocity_dofs = 0;
  int n_pressure_dofs = 0;
  std::vector<DirichletDof> dirichlet;

  int velocity_dof(int component, int scalar_dof) const {
    return component * velocity_scalar.n_dofs + scalar_dof;
  }
};

DofMap build_dof_map(const Mesh& mesh, const ElementPair& pair);

struct DiscreteField {
  Eigen::VectorXd velocity;
  Eigen::VectorXd pressure;
};

/// Nodal interpolation: f evaluated at each nodal point; bubble
/// coefficients are set to zero, P0 pressures take the barycenter value.
Eigen::VectorXd interpolate_velocity(const Mesh& mesh, const DofMap& dofmap,
                                     const VelocityFn& f, double t);
Eigen::VectorXd interpolate_pressure(const Mesh& mesh, const DofMap& dofmap,
                                     const ScalarFn& f, double t);

/// Values of g at the Dirichlet nodes, in dofmap.dirichlet order.
Eigen::VectorXd dirichlet_values(const DofMap& dofmap, const VelocityFn& g,
                                 double t);

/// Pointwise evaluation of a discrete field from one cell's local basis.
Vec2 eval_velocity(const Mesh& mesh, const DofMap& dofmap,
                   const Eigen::VectorXd& coeffs, int cell,
                   const std::array<double, 3>& bary);
double eval_pressure(const Mesh& mesh, const DofMap& dofmap,
                     const Eigen::VectorXd& coeffs, int cell,
                     const std::array<double, 3>& bary);

/// Symmetric Dirichlet elimination of an assembled system: eliminated rows
/// become identity rows, eliminated columns are moved to `boundary_columns`
/// so the right-hand side can be corrected per solve (time-dependent data).
struct DirichletSystem {
  std::vector<Triplet> matrix;
  std::vector<std::vector<std::pair<int, double>>> boundary_columns;
};

DirichletSystem apply_dirichlet(const std::vector<Triplet>& entries, int dim,
                                const std::vector<DirichletDof>& dirichlet);

/// rhs[row] -= column * g for retained rows; rhs[dirichlet dof] = g.
void apply_dirichlet_rhs(const DirichletSystem& system,
                         const std::vector<DirichletDof>& dirichlet,
                         const Eigen::VectorXd& values, Eigen::VectorXd& rhs);

}  // namespace prfem
