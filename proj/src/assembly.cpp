// Copyright (c) 2026 The prfem authors
// SPDX-License-Identifier: Apache-2.0

#include "prfem/assembly.hpp"

namespace prfem {

namespace {

// Shape values and reference gradients tabulated at quadrature points.
struct ShapeTable {
  int ndofs = 0;
  int nq = 0;
  std::vector<double> values;   // [q * ndofs + i]
  std::vector<Vec2> ref_grads;  // [q * ndofs + i]
};

ShapeTable tabulate(Family family, const QuadratureRule& rule) {
  const ReferenceElement elem = reference_element(family);
  ShapeTable table;
  table.ndofs = elem.dofs_per_cell;
  table.nq = static_cast<int>(rule.points.size());
  table.values.resize(static_cast<size_t>(table.nq) * table.ndofs);
  table.ref_grads.resize(static_cast<size_t>(table.nq) * table.ndofs);
  for (int q = 0; q < table.nq; ++q) {
    elem.eval(rule.points[q], &table.values[q * table.ndofs]);
    elem.grad(rule.points[q], &table.ref_grads[q * table.ndofs]);
  }
  return table;
}

// Affine map of one cell: x = a + J * (xhat, yhat), with (xhat, yhat) the
// second and third barycentric coordinates.
struct CellGeometry {
  Vec2 origin;
  double j00, j01, j10, j11;  // J columns: (b - a), (c - a)
  double det;

  Vec2 map(const std::array<double, 3>& bary) const {
    return {origin.x + j00 * bary[1] + j01 * bary[2],
            origin.y + j10 * bary[1] + j11 * bary[2]};
  }
  Vec2 physical_grad(Vec2 ref_grad) const {
    // grad_x = J^{-T} grad_ref
    return {(j11 * ref_grad.x - j10 * ref_grad.y) / det,
            (-j01 * ref_grad.x + j00 * ref_grad.y) / det};
  }
};

CellGeometry cell_geometry(const Mesh& mesh, int k) {
  const auto& v = mesh.triangles[k].v;
  const Vec2 a = mesh.vertices[v[0]];
  const Vec2 b = mesh.vertices[v[1]];
  const Vec2 c = mesh.vertices[v[2]];
  CellGeometry g;
  g.origin = a;
  g.j00 = b.x - a.x;
  g.j01 = c.x - a.x;
  g.j10 = b.y - a.y;
  g.j11 = c.y - a.y;
  g.det = g.j00 * g.j11 - g.j01 * g.j10;
  return g;
}

std::vector<Triplet> scalar_mass_triplets(const Mesh& mesh,
                                          const ScalarLayout& layout) {
  const QuadratureRule rule = quadrature(kAssemblyQuadDegree);
  const ShapeTable table = tabulate(layout.family, rule);
  std::vector<Triplet> entries;
  entries.reserve(static_cast<size_t>(mesh.n_triangles()) * table.ndofs *
                  table.ndofs);
  for (int k = 0; k < mesh.n_triangles(); ++k) {
    const CellGeometry geom = cell_geometry(mesh, k);
    for (int i = 0; i < table.ndofs; ++i) {
      for (int j = 0; j < table.ndofs; ++j) {
        double sum = 0.0;
        for (int q = 0; q < table.nq; ++q)
          sum += rule.weights[q] * table.values[q * table.ndofs + i] *
                 table.values[q * table.ndofs + j];
        entries.push_back(
            {layout.dof(k, i), layout.dof(k, j), geom.det * sum});
      }
    }
  }
  return entries;
}

std::vector<Triplet> scalar_stiffness_triplets(const Mesh& mesh,
                                               const ScalarLayout& layout) {
  const QuadratureRule rule = quadrature(kAssemblyQuadDegree);
  const ShapeTable table = tabulate(layout.family, rule);
  std::vector<Triplet> entries;
  std::vector<Vec2> grads(table.ndofs);
  for (int k = 0; k < mesh.n_triangles(); ++k) {
    const CellGeometry geom = cell_geometry(mesh, k);
    for (int i = 0; i < table.ndofs; ++i) {
      for (int j = 0; j < table.ndofs; ++j) {
        double sum = 0.0;
        for (int q = 0; q < table.nq; ++q) {
          const Vec2 gi = geom.physical_grad(table.ref_grads[q * table.ndofs + i]);
          const Vec2 gj = geom.physical_grad(table.ref_grads[q * table.ndofs + j]);
          sum += rule.weights[q] * dot(gi, gj);
        }
        entries.push_back(
            {layout.dof(k, i), layout.dof(k, j), geom.det * sum});
      }
    }
  }
  return entries;
}

// Expands scalar-field triplets to the two component-blocked velocity
// components.
CsrMatrix expand_to_vector(const std::vector<Triplet>& scalar_entries,
                           int n_scalar) {
  std::vector<Triplet> entries;
  entries.reserve(2 * scalar_entries.size());
  for (const Triplet& t : scalar_entries) entries.push_back(t);
  for (const Triplet& t : scalar_entries)
    entries.push_back({t.row + n_scalar, t.col + n_scalar, t.value});
  return CsrMatrix::from_triplets(2 * n_scalar, 2 * n_scalar, entries);
}

}  // namespace

CsrMatrix assemble_scalar_mass(const Mesh& mesh, const ScalarLayout& layout) {
  return CsrMatrix::from_triplets(layout.n_dofs, layout.n_dofs,
                                  scalar_mass_triplets(mesh, layout));
}

CsrMatrix assemble_scalar_stiffness(const Mesh& mesh,
                                    const ScalarLayout& layout) {
  return CsrMatrix::from_triplets(layout.n_dofs, layout.n_dofs,
                                  scalar_stiffness_triplets(mesh, layout));
}

CsrMatrix assemble_mass(const Mesh& mesh, const DofMap& dofmap) {
  return expand_to_vector(scalar_mass_triplets(mesh, dofmap.velocity_scalar),
                          dofmap.velocity_scalar.n_dofs);
}

CsrMatrix assemble_stiffness(const Mesh& mesh, const DofMap& dofmap) {
  return expand_to_vector(
      scalar_stiffness_triplets(mesh, dofmap.velocity_scalar),
      dofmap.velocity_scalar.n_dofs);
}

CsrMatrix assemble_divergence(const Mesh& mesh, const DofMap& dofmap) {
  const QuadratureRule rule = quadrature(kAssemblyQuadDegree);
  const ShapeTable vel = tabulate(dofmap.velocity_scalar.family, rule);
  const ShapeTable prs = tabulate(dofmap.pressure.family, rule);
  const int ns = dofmap.velocity_scalar.n_dofs;

  std::vector<Triplet> entries;
  for (int k = 0; k < mesh.n_triangles(); ++k) {
    const CellGeometry geom = cell_geometry(mesh, k);
    for (int p = 0; p < prs.ndofs; ++p) {
      const int prow = dofmap.pressure.dof(k, p);
      for (int i = 0; i < vel.ndofs; ++i) {
        double sx = 0.0, sy = 0.0;
        for (int q = 0; q < vel.nq; ++q) {
          const Vec2 gi = geom.physical_grad(vel.ref_grads[q * vel.ndofs + i]);
          const double w = rule.weights[q] * prs.values[q * prs.ndofs + p];
          sx += w * gi.x;
          sy += w * gi.y;
        }
        const int s = dofmap.velocity_scalar.dof(k, i);
        entries.push_back({prow, s, geom.det * sx});
        entries.push_back({prow, ns + s, geom.det * sy});
      }
    }
  }
  return CsrMatrix::from_triplets(dofmap.n_pressure_dofs,
                                  dofmap.n_velocity_dofs, entries);
}

Eigen::VectorXd assemble_mean_row(const Mesh& mesh, const DofMap& dofmap) {
  const QuadratureRule rule = quadrature(kAssemblyQuadDegree);
  const ShapeTable prs = tabulate(dofmap.pressure.family, rule);
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(dofmap.n_pressure_dofs);
  for (int k = 0; k < mesh.n_triangles(); ++k) {
    const CellGeometry geom = cell_geometry(mesh, k);
    for (int p = 0; p < prs.ndofs; ++p) {
      double sum = 0.0;
      for (int q = 0; q < prs.nq; ++q)
        sum += rule.weights[q] * prs.values[q * prs.ndofs + p];
      mean[dofmap.pressure.dof(k, p)] += geom.det * sum;
    }
  }
  return mean;
}

SaddleSystem assemble_saddle_system(const Mesh& mesh, const DofMap& dofmap) {
  SaddleSystem sys;
  sys.mass = assemble_mass(mesh, dofmap);
  sys.stiffness = assemble_stiffness(mesh, dofmap);
  sys.divergence = assemble_divergence(mesh, dofmap);
  sys.mean_row = assemble_mean_row(mesh, dofmap);
  return sys;
}

Eigen::VectorXd assemble_load(const Mesh& mesh, const DofMap& dofmap,
                              const VelocityFn& f, double t,
                              int quad_degree) {
  const QuadratureRule rule = quadrature(quad_degree);
  const ShapeTable vel = tabulate(dofmap.velocity_scalar.family, rule);
  const int ns = dofmap.velocity_scalar.n_dofs;

  Eigen::VectorXd load = Eigen::VectorXd::Zero(dofmap.n_velocity_dofs);
  for (int k = 0; k < mesh.n_triangles(); ++k) {
    const CellGeometry geom = cell_geometry(mesh, k);
    for (int q = 0; q < vel.nq; ++q) {
      const Vec2 fq = f(geom.map(rule.points[q]), t);
      const double w = geom.det * rule.weights[q];
      for (int i = 0; i < vel.ndofs; ++i) {
        const int s = dofmap.velocity_scalar.dof(k, i);
        const double phi = vel.values[q * vel.ndofs + i];
        load[s] += w * phi * fq.x;
        load[ns + s] += w * phi * fq.y;
      }
    }
  }
  return load;
}

CsrMatrix assemble_convection(const Mesh& mesh, const DofMap& dofmap,
                              const Eigen::VectorXd& advecting_velocity) {
  const QuadratureRule rule = quadrature(kConvectionQuadDegree);
  const ShapeTable vel = tabulate(dofmap.velocity_scalar.family, rule);
  const int ns = dofmap.velocity_scalar.n_dofs;

  std::vector<Triplet> scalar_entries;
  std::vector<Vec2> grads(vel.ndofs);
  for (int k = 0; k < mesh.n_triangles(); ++k) {
    const CellGeometry geom = cell_geometry(mesh, k);
    for (int i = 0; i < vel.ndofs; ++i)
      for (int j = 0; j < vel.ndofs; ++j)
        scalar_entries.push_back({dofmap.velocity_scalar.dof(k, i),
                                  dofmap.velocity_scalar.dof(k, j), 0.0});
    const size_t base = scalar_entries.size() -
                        static_cast<size_t>(vel.ndofs) * vel.ndofs;
    for (int q = 0; q < vel.nq; ++q) {
      Vec2 wq{0.0, 0.0};
      for (int j = 0; j < vel.ndofs; ++j) {
        const int s = dofmap.velocity_scalar.dof(k, j);
        const double phi = vel.values[q * vel.ndofs + j];
        wq.x += phi * advecting_velocity[s];
        wq.y += phi * advecting_velocity[ns + s];
        grads[j] = geom.physical_grad(vel.ref_grads[q * vel.ndofs + j]);
      }
      const double w = geom.det * rule.weights[q];
      for (int i = 0; i < vel.ndofs; ++i) {
        const double phi_i = vel.values[q * vel.ndofs + i];
        for (int j = 0; j < vel.ndofs; ++j)
          scalar_entries[base + static_cast<size_t>(i) * vel.ndofs + j].value +=
              w * dot(wq, grads[j]) * phi_i;
      }
    }
  }
  return expand_to_vector(scalar_entries, ns);
}

CsrMatrix assemble_pressure_mass(const Mesh& mesh, const DofMap& dofmap) {
  return assemble_scalar_mass(mesh, dofmap.pressure);
}

std::vector<double> cellwise_divergence_norms(
    const Mesh& mesh, const DofMap& dofmap, const Eigen::VectorXd& velocity) {
  const QuadratureRule rule = quadrature(kAssemblyQuadDegree);
  const ShapeTable vel = tabulate(dofmap.velocity_scalar.family, rule);
  const int ns = dofmap.velocity_scalar.n_dofs;

  std::vector<double> norms(mesh.n_triangles());
  for (int k = 0; k < mesh.n_triangles(); ++k) {
    const CellGeometry geom = cell_geometry(mesh, k);
    double sum = 0.0;
    for (int q = 0; q < vel.nq; ++q) {
      double div = 0.0;
      for (int i = 0; i < vel.ndofs; ++i) {
        const int s = dofmap.velocity_scalar.dof(k, i);
        const Vec2 gi = geom.physical_grad(vel.ref_grads[q * vel.ndofs + i]);
        div += gi.x * velocity[s] + gi.y * velocity[ns + s];
      }
      sum += rule.weights[q] * div * div;
    }
    norms[k] = std::sqrt(geom.det * sum);
  }
  return norms;
}

}  // namespace prfem
