// Copyright (c) 2026 The prfem authors
// SPDX-License-Identifier: Apache-2.0

#include "prfem/spaces.hpp"

#include <stdexcept>

namespace prfem {

ElementPair element_pair(ElementPairName name) {
  switch (name) {
    case ElementPairName::TaylorHood:
      return {name, Family::P2, Family::P1, true, true};
    case ElementPairName::ScottVogelius:
      return {name, Family::P2, Family::P1, true, false};  // P1 disc
    case ElementPairName::Mini:
      return {name, Family::P1Bubble, Family::P1, true, true};
    case ElementPairName::CrouzeixRaviart:
      return {name, Family::P1NC, Family::P0, false, false};
  }
  throw std::invalid_argument("element_pair: unknown pair");
}

std::string short_name(ElementPairName name) {
  switch (name) {
    case ElementPairName::TaylorHood: return "th";
    case ElementPairName::ScottVogelius: return "sv";
    case ElementPairName::Mini: return "mini";
    case ElementPairName::CrouzeixRaviart: return "cr";
  }
  throw std::invalid_argument("short_name: unknown pair");
}

ElementPairName pair_from_name(const std::string& name) {
  if (name == "th") return ElementPairName::TaylorHood;
  if (name == "sv") return ElementPairName::ScottVogelius;
  if (name == "mini") return ElementPairName::Mini;
  if (name == "cr") return ElementPairName::CrouzeixRaviart;
  throw std::invalid_argument("unknown element pair: " + name);
}

namespace {

ScalarLayout velocity_layout(const Mesh& mesh, Family family) {
  ScalarLayout layout;
  layout.family = family;
  const int nv = mesh.n_vertices();
  const int ne = mesh.n_edges();
  const int nt = mesh.n_triangles();

  switch (family) {
    case Family::P2: {
      layout.n_dofs = nv + ne;
      layout.dofs_per_cell = 6;
      layout.cell_dofs.resize(static_cast<size_t>(6) * nt);
      for (int k = 0; k < nt; ++k) {
        for (int i = 0; i < 3; ++i) {
          layout.cell_dofs[6 * k + i] = mesh.triangles[k].v[i];
          layout.cell_dofs[6 * k + 3 + i] = nv + mesh.triangle_edges[k][i];
        }
      }
      layout.nodes.resize(layout.n_dofs);
      layout.is_nodal.assign(layout.n_dofs, true);
      for (int v = 0; v < nv; ++v) layout.nodes[v] = mesh.vertices[v];
      for (int e = 0; e < ne; ++e) layout.nodes[nv + e] = mesh.edges[e].midpoint;
      break;
    }
    case Family::P1Bubble: {
      layout.n_dofs = nv + nt;
      layout.dofs_per_cell = 4;
      layout.cell_dofs.resize(static_cast<size_t>(4) * nt);
      for (int k = 0; k < nt; ++k) {
        for (int i = 0; i < 3; ++i)
          layout.cell_dofs[4 * k + i] = mesh.triangles[k].v[i];
        layout.cell_dofs[4 * k + 3] = nv + k;
      }
      layout.nodes.resize(layout.n_dofs);
      layout.is_nodal.assign(layout.n_dofs, true);
      for (int v = 0; v < nv; ++v) layout.nodes[v] = mesh.vertices[v];
      for (int k = 0; k < nt; ++k) {
        layout.nodes[nv + k] = mesh.barycenter(k);
        layout.is_nodal[nv + k] = false;  // bubble: interpolation sets 0
      }
      break;
    }
    case Family::P1NC: {
      layout.n_dofs = ne;
      layout.dofs_per_cell = 3;
      layout.cell_dofs.resize(static_cast<size_t>(3) * nt);
      for (int k = 0; k < nt; ++k)
        for (int e = 0; e < 3; ++e)
          layout.cell_dofs[3 * k + e] = mesh.triangle_edges[k][e];
      layout.nodes.resize(ne);
      layout.is_nodal.assign(ne, true);
      for (int e = 0; e < ne; ++e) layout.nodes[e] = mesh.edges[e].midpoint;
      break;
    }
    default:
      throw std::invalid_argument("velocity_layout: unsupported family");
  }
  return layout;
}

ScalarLayout pressure_layout(const Mesh& mesh, Family family,
                             bool continuous) {
  ScalarLayout layout;
  layout.family = family;
  const int nv = mesh.n_vertices();
  const int nt = mesh.n_triangles();

  if (family == Family::P1 && continuous) {
    layout.n_dofs = nv;
    layout.dofs_per_cell = 3;
    layout.cell_dofs.resize(static_cast<size_t>(3) * nt);
    for (int k = 0; k < nt; ++k)
      for (int i = 0; i < 3; ++i)
        layout.cell_dofs[3 * k + i] = mesh.triangles[k].v[i];
    layout.nodes = mesh.vertices;
    layout.is_nodal.assign(nv, true);
  } else if (family == Family::P1) {  // discontinuous, cell-local numbering
    layout.n_dofs = 3 * nt;
    layout.dofs_per_cell = 3;
    layout.cell_dofs.resize(static_cast<size_t>(3) * nt);
    layout.nodes.resize(layout.n_dofs);
    layout.is_nodal.assign(layout.n_dofs, true);
    for (int k = 0; k < nt; ++k) {
      for (int i = 0; i < 3; ++i) {
        layout.cell_dofs[3 * k + i] = 3 * k + i;
        layout.nodes[3 * k + i] = mesh.vertices[mesh.triangles[k].v[i]];
      }
    }
  } else if (family == Family::P0) {
    layout.n_dofs = nt;
    layout.dofs_per_cell = 1;
    layout.cell_dofs.resize(nt);
    layout.nodes.resize(nt);
    layout.is_nodal.assign(nt, true);
    for (int k = 0; k < nt; ++k) {
      layout.cell_dofs[k] = k;
      layout.nodes[k] = mesh.barycenter(k);
    }
  } else {
    throw std::invalid_argument("pressure_layout: unsupported family");
  }
  return layout;
}

std::vector<bool> boundary_scalar_dofs(const Mesh& mesh,
                                       const ScalarLayout& layout) {
  std::vector<bool> on_boundary(layout.n_dofs, false);
  const int nv = mesh.n_vertices();
  switch (layout.family) {
    case Family::P2:
      for (int v = 0; v < nv; ++v) on_boundary[v] = mesh.boundary_vertex[v];
      for (int e = 0; e < mesh.n_edges(); ++e)
        on_boundary[nv + e] = mesh.boundary_edge[e];
      break;
    case Family::P1Bubble:
      for (int v = 0; v < nv; ++v) on_boundary[v] = mesh.boundary_vertex[v];
      break;  // bubbles vanish on cell boundaries, never Dirichlet
    case Family::P1NC:
      for (int e = 0; e < mesh.n_edges(); ++e)
        on_boundary[e] = mesh.boundary_edge[e];
      break;
    default:
      throw std::invalid_argument("boundary_scalar_dofs: unsupported family");
  }
  return on_boundary;
}

}  // namespace

DofMap build_dof_map(const Mesh& mesh, const ElementPair& pair) {
  DofMap dofmap;
  dofmap.pair = pair;
  dofmap.velocity_scalar = velocity_layout(mesh, pair.velocity_family);
  dofmap.pressure =
      pressure_layout(mesh, pair.pressure_family, pair.pressure_continuous);
  dofmap.n_velocity_dofs = 2 * dofmap.velocity_scalar.n_dofs;
  dofmap.n_pressure_dofs = dofmap.pressure.n_dofs;

  const std::vector<bool> on_boundary =
      boundary_scalar_dofs(mesh, dofmap.velocity_scalar);
  for (int c = 0; c < 2; ++c)
    for (int s = 0; s < dofmap.velocity_scalar.n_dofs; ++s)
      if (on_boundary[s])
        dofmap.dirichlet.push_back(
            {dofmap.velocity_dof(c, s), dofmap.velocity_scalar.nodes[s], c});
  return dofmap;
}

Eigen::VectorXd interpolate_velocity(const Mesh&, const DofMap& dofmap,
                                     const VelocityFn& f, double t) {
  const ScalarLayout& layout = dofmap.velocity_scalar;
  Eigen::VectorXd coeffs = Eigen::VectorXd::Zero(dofmap.n_velocity_dofs);
  for (int s = 0; s < layout.n_dofs; ++s) {
    if (!layout.is_nodal[s]) continue;
    const Vec2 value = f(layout.nodes[s], t);
    coeffs[dofmap.velocity_dof(0, s)] = value.x;
    coeffs[dofmap.velocity_dof(1, s)] = value.y;
  }
  return coeffs;
}

Eigen::VectorXd interpolate_pressure(const Mesh&, const DofMap& dofmap,
                                     const ScalarFn& f, double t) {
  const ScalarLayout& layout = dofmap.pressure;
  Eigen::VectorXd coeffs = Eigen::VectorXd::Zero(layout.n_dofs);
  for (int s = 0; s < layout.n_dofs; ++s)
    coeffs[s] = f(layout.nodes[s], t);
  return coeffs;
}

Eigen::VectorXd dirichlet_values(const DofMap& dofmap, const VelocityFn& g,
                                 double t) {
  Eigen::VectorXd values(dofmap.dirichlet.size());
  for (size_t i = 0; i < dofmap.dirichlet.size(); ++i) {
    const Vec2 gv = g(dofmap.dirichlet[i].node, t);
    values[i] = dofmap.dirichlet[i].component == 0 ? gv.x : gv.y;
  }
  return values;
}

Vec2 eval_velocity(const Mesh&, const DofMap& dofmap,
                   const Eigen::VectorXd& coeffs, int cell,
                   const std::array<double, 3>& bary) {
  const ScalarLayout& layout = dofmap.velocity_scalar;
  const ReferenceElement elem = reference_element(layout.family);
  double values[8];
  elem.eval(bary, values);
  Vec2 result{0.0, 0.0};
  for (int i = 0; i < layout.dofs_per_cell; ++i) {
    const int s = layout.dof(cell, i);
    result.x += values[i] * coeffs[dofmap.velocity_dof(0, s)];
    result.y += values[i] * coeffs[dofmap.velocity_dof(1, s)];
  }
  return result;
}

double eval_pressure(const Mesh&, const DofMap& dofmap,
                     const Eigen::VectorXd& coeffs, int cell,
                     const std::array<double, 3>& bary) {
  const ScalarLayout& layout = dofmap.pressure;
  const ReferenceElement elem = reference_element(layout.family);
  double values[8];
  elem.eval(bary, values);
  double result = 0.0;
  for (int i = 0; i < layout.dofs_per_cell; ++i)
    result += values[i] * coeffs[layout.dof(cell, i)];
  return result;
}

DirichletSystem apply_dirichlet(const std::vector<Triplet>& entries, int dim,
                                const std::vector<DirichletDof>& dirichlet) {
  std::vector<int> index_of(dim, -1);
  for (size_t i = 0; i < dirichlet.size(); ++i)
    index_of[dirichlet[i].dof] = static_cast<int>(i);

  DirichletSystem out;
  out.matrix.reserve(entries.size() + dirichlet.size());
  out.boundary_columns.resize(dirichlet.size());
  for (const Triplet& t : entries) {
    const bool row_bc = index_of[t.row] >= 0;
    const bool col_bc = index_of[t.col] >= 0;
    if (row_bc) continue;  // row replaced by identity below
    if (col_bc)
      out.boundary_columns[index_of[t.col]].emplace_back(t.row, t.value);
    else
      out.matrix.push_back(t);
  }
  for (const DirichletDof& d : dirichlet)
    out.matrix.push_back({d.dof, d.dof, 1.0});
  return out;
}

void apply_dirichlet_rhs(const DirichletSystem& system,
                         const std::vector<DirichletDof>& dirichlet,
                         const Eigen::VectorXd& values, Eigen::VectorXd& rhs) {
  for (size_t i = 0; i < dirichlet.size(); ++i) {
    for (const auto& [row, value] : system.boundary_columns[i])
      rhs[row] -= value * values[i];
  }
  for (size_t i = 0; i < dirichlet.size(); ++i)
    rhs[dirichlet[i].dof] = values[i];
}

}  // namespace prfem
