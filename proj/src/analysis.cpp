// Copyright (c) 2026 The prfem authors
// SPDX-License-Identifier: Apache-2.0

#include "prfem/analysis.hpp"

#include <Eigen/SparseCholesky>
#include <cmath>
#include <stdexcept>

#include "prfem/timestepper.hpp"

namespace prfem {

std::vector<ConvergenceRow> compute_rates(
    const std::vector<std::pair<double, double>>& h_and_error, double nu) {
  std::vector<ConvergenceRow> rows;
  rows.reserve(h_and_error.size());
  for (size_t i = 0; i < h_and_error.size(); ++i) {
    ConvergenceRow row;
    row.nu = nu;
    row.h = h_and_error[i].first;
    row.error_l2 = h_and_error[i].second;
    if (i > 0) {
      const auto& [h_coarse, e_coarse] = h_and_error[i - 1];
      row.rate = std::log(e_coarse / row.error_l2) /
                 std::log(h_coarse / row.h);
    }
    rows.push_back(row);
  }
  return rows;
}

namespace {

// Shared quadrature loop for error norms.
template <typename CellTerm>
double integrate_cells(const Mesh& mesh, const CellTerm& term) {
  double sum = 0.0;
  for (int k = 0; k < mesh.n_triangles(); ++k) sum += term(k);
  return std::sqrt(sum);
}

struct CellBasis {
  QuadratureRule rule;
  ReferenceElement elem;
  std::vector<double> values;
  std::vector<Vec2> ref_grads;

  CellBasis(Family family, int degree)
      : rule(quadrature(degree)), elem(reference_element(family)) {
    values.resize(rule.points.size() * elem.dofs_per_cell);
    ref_grads.resize(rule.points.size() * elem.dofs_per_cell);
    for (size_t q = 0; q < rule.points.size(); ++q) {
      elem.eval(rule.points[q], &values[q * elem.dofs_per_cell]);
      elem.grad(rule.points[q], &ref_grads[q * elem.dofs_per_cell]);
    }
  }
};

struct AffineCell {
  Vec2 a;
  double j00, j01, j10, j11, det;

  explicit AffineCell(const Mesh& mesh, int k) {
    const auto& v = mesh.triangles[k].v;
    a = mesh.vertices[v[0]];
    const Vec2 b = mesh.vertices[v[1]];
    const Vec2 c = mesh.vertices[v[2]];
    j00 = b.x - a.x;
    j01 = c.x - a.x;
    j10 = b.y - a.y;
    j11 = c.y - a.y;
    det = j00 * j11 - j01 * j10;
  }
  Vec2 map(const std::array<double, 3>& bary) const {
    return {a.x + j00 * bary[1] + j01 * bary[2],
            a.y + j10 * bary[1] + j11 * bary[2]};
  }
  Vec2 physical_grad(Vec2 g) const {
    return {(j11 * g.x - j10 * g.y) / det, (-j01 * g.x + j00 * g.y) / det};
  }
};

}  // namespace

double l2_error(const Mesh& mesh, const DofMap& dofmap,
                const Eigen::VectorXd& velocity, const VelocityFn& exact,
                double t) {
  const CellBasis basis(dofmap.velocity_scalar.family, kErrorQuadDegree);
  const int nd = basis.elem.dofs_per_cell;
  const int ns = dofmap.velocity_scalar.n_dofs;
  return integrate_cells(mesh, [&](int k) {
    const AffineCell cell(mesh, k);
    double sum = 0.0;
    for (size_t q = 0; q < basis.rule.points.size(); ++q) {
      Vec2 uh{0.0, 0.0};
      for (int i = 0; i < nd; ++i) {
        const int s = dofmap.velocity_scalar.dof(k, i);
        const double phi = basis.values[q * nd + i];
        uh.x += phi * velocity[s];
        uh.y += phi * velocity[ns + s];
      }
      const Vec2 diff = uh - exact(cell.map(basis.rule.points[q]), t);
      sum += basis.rule.weights[q] * dot(diff, diff);
    }
    return cell.det * sum;
  });
}

double h1_seminorm_error(const Mesh& mesh, const DofMap& dofmap,
                         const Eigen::VectorXd& velocity,
                         const TensorFn& exact_gradient, double t) {
  const CellBasis basis(dofmap.velocity_scalar.family, kErrorQuadDegree);
  const int nd = basis.elem.dofs_per_cell;
  const int ns = dofmap.velocity_scalar.n_dofs;
  return integrate_cells(mesh, [&](int k) {
    const AffineCell cell(mesh, k);
    double sum = 0.0;
    for (size_t q = 0; q < basis.rule.points.size(); ++q) {
      Mat2 gh{};
      for (int i = 0; i < nd; ++i) {
        const int s = dofmap.velocity_scalar.dof(k, i);
        const Vec2 g = cell.physical_grad(basis.ref_grads[q * nd + i]);
        gh.xx += g.x * velocity[s];
        gh.xy += g.y * velocity[s];
        gh.yx += g.x * velocity[ns + s];
        gh.yy += g.y * velocity[ns + s];
      }
      const Mat2 diff =
          gh - exact_gradient(cell.map(basis.rule.points[q]), t);
      sum += basis.rule.weights[q] * frobenius2(diff);
    }
    return cell.det * sum;
  });
}

double pressure_l2_error(const Mesh& mesh, const DofMap& dofmap,
                         const Eigen::VectorXd& pressure,
                         const ScalarFn& exact, double t) {
  const CellBasis basis(dofmap.pressure.family, kErrorQuadDegree);
  const int nd = basis.elem.dofs_per_cell;
  return integrate_cells(mesh, [&](int k) {
    const AffineCell cell(mesh, k);
    double sum = 0.0;
    for (size_t q = 0; q < basis.rule.points.size(); ++q) {
      double ph = 0.0;
      for (int i = 0; i < nd; ++i)
        ph += basis.values[q * nd + i] * pressure[dofmap.pressure.dof(k, i)];
      const double diff = ph - exact(cell.map(basis.rule.points[q]), t);
      sum += basis.rule.weights[q] * diff * diff;
    }
    return cell.det * sum;
  });
}

namespace {

DiscreteField constrained_projection(const DofMap& dofmap,
                                     const SaddleSystem& sys, double alpha,
                                     double nu,
                                     const Eigen::VectorXd& rhs_velocity,
                                     const Eigen::VectorXd& dirichlet) {
  const SaddleOperator op(sys, dofmap, alpha, nu);
  const Eigen::VectorXd zero_p = Eigen::VectorXd::Zero(dofmap.n_pressure_dofs);
  const Eigen::VectorXd x = op.solve(rhs_velocity, zero_p, dirichlet);
  DiscreteField field;
  field.velocity = x.head(dofmap.n_velocity_dofs);
  field.pressure = x.segment(dofmap.n_velocity_dofs, dofmap.n_pressure_dofs);
  return field;
}

}  // namespace

// Projection right-hand sides integrate analytic, possibly high-frequency
// inputs: one degree up from the error norms keeps the consistency error of
// the divergence-free pair at the solver floor.
constexpr int kProjectionQuadDegree = 10;

DiscreteField helmholtz_projection(const Mesh& mesh, const DofMap& dofmap,
                                   const SaddleSystem& sys,
                                   const VelocityFn& w, double t,
                                   const VelocityFn* boundary) {
  const Eigen::VectorXd rhs =
      assemble_load(mesh, dofmap, w, t, kProjectionQuadDegree);
  const Eigen::VectorXd g =
      boundary ? dirichlet_values(dofmap, *boundary, t)
               : Eigen::VectorXd::Zero(dofmap.dirichlet.size());
  return constrained_projection(dofmap, sys, 1.0, 0.0, rhs, g);
}

DiscreteField helmholtz_projection(const Mesh& mesh, const DofMap& dofmap,
                                   const SaddleSystem& sys,
                                   const Eigen::VectorXd& w) {
  const Eigen::VectorXd rhs = sys.mass * w;
  Eigen::VectorXd g(dofmap.dirichlet.size());
  for (size_t i = 0; i < dofmap.dirichlet.size(); ++i)
    g[i] = w[dofmap.dirichlet[i].dof];
  return constrained_projection(dofmap, sys, 1.0, 0.0, rhs, g);
}

DiscreteField stokes_projection(const Mesh& mesh, const DofMap& dofmap,
                                const SaddleSystem& sys,
                                const TensorFn& gradient_of_w, double t,
                                const VelocityFn* boundary) {
  // rhs_i = (grad w, grad phi_i), assembled per component.
  const CellBasis basis(dofmap.velocity_scalar.family, kProjectionQuadDegree);
  const int nd = basis.elem.dofs_per_cell;
  const int ns = dofmap.velocity_scalar.n_dofs;
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(dofmap.n_velocity_dofs);
  for (int k = 0; k < mesh.n_triangles(); ++k) {
    const AffineCell cell(mesh, k);
    for (size_t q = 0; q < basis.rule.points.size(); ++q) {
      const Mat2 gw = gradient_of_w(cell.map(basis.rule.points[q]), t);
      const double w = cell.det * basis.rule.weights[q];
      for (int i = 0; i < nd; ++i) {
        const int s = dofmap.velocity_scalar.dof(k, i);
        const Vec2 g = cell.physical_grad(basis.ref_grads[q * nd + i]);
        rhs[s] += w * (gw.xx * g.x + gw.xy * g.y);
        rhs[ns + s] += w * (gw.yx * g.x + gw.yy * g.y);
      }
    }
  }
  const Eigen::VectorXd g =
      boundary ? dirichlet_values(dofmap, *boundary, t)
               : Eigen::VectorXd::Zero(dofmap.dirichlet.size());
  return constrained_projection(dofmap, sys, 0.0, 1.0, rhs, g);
}

Eigen::VectorXd pressure_l2_projection(const Mesh& mesh, const DofMap& dofmap,
                                       const ScalarFn& p, double t) {
  const CsrMatrix mass = assemble_pressure_mass(mesh, dofmap);

  const CellBasis basis(dofmap.pressure.family, kErrorQuadDegree);
  const int nd = basis.elem.dofs_per_cell;
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(dofmap.n_pressure_dofs);
  for (int k = 0; k < mesh.n_triangles(); ++k) {
    const AffineCell cell(mesh, k);
    for (size_t q = 0; q < basis.rule.points.size(); ++q) {
      const double pv =
          cell.det * basis.rule.weights[q] *
          p(cell.map(basis.rule.points[q]), t);
      for (int i = 0; i < nd; ++i)
        rhs[dofmap.pressure.dof(k, i)] += pv * basis.values[q * nd + i];
    }
  }

  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(mass.nnz());
  for (int r = 0; r < mass.rows; ++r)
    for (int k = mass.row_offsets[r]; k < mass.row_offsets[r + 1]; ++k)
      entries.emplace_back(r, mass.col_indices[k], mass.values[k]);
  Eigen::SparseMatrix<double> m(mass.rows, mass.cols);
  m.setFromTriplets(entries.begin(), entries.end());
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(m);
  if (ldlt.info() != Eigen::Success)
    throw std::runtime_error("pressure_l2_projection: factorization failed");
  return ldlt.solve(rhs);
}

Eigen::VectorXd pressure_lagrange_interpolant(const Mesh& mesh,
                                              const ElementPair& pair,
                                              const ScalarFn& p, double t) {
  if (pair.pressure_family == Family::P0)
    throw std::invalid_argument(
        "pressure_lagrange_interpolant: P0 pressure has no H1-conforming "
        "subspace");
  Eigen::VectorXd coeffs(mesh.n_vertices());
  for (int v = 0; v < mesh.n_vertices(); ++v)
    coeffs[v] = p(mesh.vertices[v], t);
  return coeffs;
}

double p1_gradient_error(const Mesh& mesh,
                         const Eigen::VectorXd& vertex_coeffs,
                         const VelocityFn& grad_p, double t) {
  const CellBasis basis(Family::P1, kErrorQuadDegree);
  return integrate_cells(mesh, [&](int k) {
    const AffineCell cell(mesh, k);
    // P1 gradient is constant per cell.
    Vec2 gh{0.0, 0.0};
    for (int i = 0; i < 3; ++i) {
      const Vec2 g = cell.physical_grad(basis.ref_grads[i]);
      const double c = vertex_coeffs[mesh.triangles[k].v[i]];
      gh.x += c * g.x;
      gh.y += c * g.y;
    }
    double sum = 0.0;
    for (size_t q = 0; q < basis.rule.points.size(); ++q) {
      const Vec2 diff = gh - grad_p(cell.map(basis.rule.points[q]), t);
      sum += basis.rule.weights[q] * dot(diff, diff);
    }
    return cell.det * sum;
  });
}

double supercloseness_error(const Mesh& mesh, const DofMap& dofmap,
                            const SaddleSystem& sys,
                            const Eigen::VectorXd& u_h,
                            const VelocityFn& exact, double t,
                            const VelocityFn* boundary) {
  const DiscreteField projected =
      helmholtz_projection(mesh, dofmap, sys, exact, t, boundary);
  const Eigen::VectorXd diff = u_h - projected.velocity;
  return std::sqrt(sys.mass.inner(diff, diff));
}

TheoremCheck theorem_bound_check(ElementPairName name,
                                 const FlowProblem& problem, int n,
                                 double dt) {
  if (name != ElementPairName::ScottVogelius &&
      name != ElementPairName::TaylorHood)
    throw std::invalid_argument(
        "theorem_bound_check: bounds are stated for the SV and TH pairs");

  const Mesh mesh = alfeld_split(build_uniform_mesh(n));
  const ElementPair pair = element_pair(name);
  Bdf3Integrator integrator(mesh, pair, problem, dt, InitMode::HelmholtzAll);
  integrator.run(problem.end_time);

  const DofMap& dofmap = integrator.dofmap();
  const SaddleSystem& sys = integrator.system();
  const auto& snapshots = integrator.snapshots();
  const size_t n_levels = snapshots.size();

  // Projection operators factorized once, solved per time level.
  const SaddleOperator mass_op(sys, dofmap, 1.0, 0.0);
  const SaddleOperator stiffness_op(sys, dofmap, 0.0, 1.0);
  const Eigen::VectorXd zero_p = Eigen::VectorXd::Zero(dofmap.n_pressure_dofs);

  std::vector<double> grad_e_sq(n_levels), grad_d_sq(n_levels);
  double max_pressure_term = 0.0;
  Eigen::VectorXd e_final;
  for (size_t k = 0; k < n_levels; ++k) {
    const double tk = k * dt;
    const Eigen::VectorXd g =
        dirichlet_values(dofmap, problem.velocity, tk);
    const Eigen::VectorXd mass_rhs =
        assemble_load(mesh, dofmap, problem.velocity, tk,
                      kProjectionQuadDegree);
    const Eigen::VectorXd pu =
        mass_op.solve(mass_rhs, zero_p, g).head(dofmap.n_velocity_dofs);

    // Stokes projection right-hand side from the analytic gradient.
    const DiscreteField su_field = stokes_projection(
        mesh, dofmap, sys, problem.velocity_gradient, tk, &problem.velocity);

    const Eigen::VectorXd e = snapshots[k] - pu;
    const Eigen::VectorXd d = su_field.velocity - pu;
    grad_e_sq[k] = sys.stiffness.inner(e, e);
    grad_d_sq[k] = sys.stiffness.inner(d, d);
    if (k + 1 == n_levels) e_final = e;

    if (name == ElementPairName::TaylorHood) {
      const Eigen::VectorXd lp =
          pressure_lagrange_interpolant(mesh, pair, problem.pressure, tk);
      const double ge =
          p1_gradient_error(mesh, lp, problem.pressure_gradient, tk);
      max_pressure_term = std::max(max_pressure_term, ge * ge);
    }
  }

  auto trapezoid = [dt](const std::vector<double>& f) {
    double sum = 0.5 * (f.front() + f.back());
    for (size_t k = 1; k + 1 < f.size(); ++k) sum += f[k];
    return dt * sum;
  };

  TheoremCheck check;
  check.lhs = sys.mass.inner(e_final, e_final) +
              problem.nu * trapezoid(grad_e_sq);
  const double robust_term = problem.nu * trapezoid(grad_d_sq);
  if (name == ElementPairName::ScottVogelius) {
    check.rhs = robust_term;
  } else {
    const double e_const = std::exp(1.0);
    check.rhs = e_const * robust_term +
                e_const * problem.end_time * max_pressure_term;
  }
  check.final_error_l2 = l2_error(mesh, dofmap, integrator.velocity(),
                                  problem.velocity, problem.end_time);
  check.holds = check.lhs <= check.rhs;
  return check;
}

}  // namespace prfem
