// Copyright (c) 2026 The prfem authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <stdexcept>

#include <Eigen/SparseCholesky>

#include "prfem/linsolve.hpp"

using namespace prfem;

namespace {

struct Setup {
  Mesh mesh;
  DofMap dofmap;
  SaddleSystem sys;

  Setup(int n, ElementPairName name)
      : mesh(alfeld_split(build_uniform_mesh(n))),
        dofmap(build_dof_map(mesh, element_pair(name))),
        sys(assemble_saddle_system(mesh, dofmap)) {}
};

}  // namespace

TEST_CASE("zero data gives the zero solution") {
  const Setup s(2, ElementPairName::TaylorHood);
  const Eigen::VectorXd rhs_v = Eigen::VectorXd::Zero(s.dofmap.n_velocity_dofs);
  const Eigen::VectorXd rhs_p = Eigen::VectorXd::Zero(s.dofmap.n_pressure_dofs);
  const Eigen::VectorXd g = Eigen::VectorXd::Zero(s.dofmap.dirichlet.size());
  const auto [field, report] =
      solve_saddle(s.sys, s.dofmap, 1.0, 1.0, nullptr, rhs_v, rhs_p, g);
  CHECK(report.factorization_ok);
  CHECK(field.velocity.lpNorm<Eigen::Infinity>() < 1e-14);
  CHECK(field.pressure.lpNorm<Eigen::Infinity>() < 1e-14);
}

TEST_CASE("steady in-space solution reproduced to solver accuracy") {
  // u = (y,-x), p = x+y-1 satisfy -lap u + grad p = (1,1) and live in the
  // discrete spaces of both P2 pairs.
  const VelocityFn exact_u = [](Vec2 x, double) -> Vec2 { return {x.y, -x.x}; };
  for (auto name : {ElementPairName::TaylorHood, ElementPairName::ScottVogelius}) {
    const Setup s(2, name);
    const Eigen::VectorXd rhs_v = assemble_load(
        s.mesh, s.dofmap, [](Vec2, double) -> Vec2 { return {1.0, 1.0}; }, 0.0);
    const Eigen::VectorXd rhs_p =
        Eigen::VectorXd::Zero(s.dofmap.n_pressure_dofs);
    const Eigen::VectorXd g = dirichlet_values(s.dofmap, exact_u, 0.0);
    const auto [field, report] =
        solve_saddle(s.sys, s.dofmap, 0.0, 1.0, nullptr, rhs_v, rhs_p, g);

    const Eigen::VectorXd exact =
        interpolate_velocity(s.mesh, s.dofmap, exact_u, 0.0);
    CHECK((field.velocity - exact).lpNorm<Eigen::Infinity>() < 1e-10);

    // pressure reproduced up to its zero-mean normalization
    const Eigen::VectorXd p_exact = interpolate_pressure(
        s.mesh, s.dofmap, [](Vec2 x, double) { return x.x + x.y - 1.0; }, 0.0);
    CHECK((field.pressure - p_exact).lpNorm<Eigen::Infinity>() < 1e-9);

    // discrete divergence-freeness and the pressure-mean constraint
    CHECK((s.sys.divergence * field.velocity).lpNorm<Eigen::Infinity>() <
          1e-10);
    CHECK(std::abs(s.sys.mean_row.dot(field.pressure)) < 1e-11);
  }
}

TEST_CASE("SV solutions are pointwise divergence-free per element") {
  const Setup s(2, ElementPairName::ScottVogelius);
  // a non-trivial forced solve
  const Eigen::VectorXd rhs_v = assemble_load(
      s.mesh, s.dofmap,
      [](Vec2 x, double) -> Vec2 {
        return {std::sin(3.0 * x.y), std::cos(2.0 * x.x)};
      },
      0.0);
  const Eigen::VectorXd rhs_p = Eigen::VectorXd::Zero(s.dofmap.n_pressure_dofs);
  const Eigen::VectorXd g = Eigen::VectorXd::Zero(s.dofmap.dirichlet.size());
  const auto [field, report] =
      solve_saddle(s.sys, s.dofmap, 1.0, 1.0, nullptr, rhs_v, rhs_p, g);
  for (double norm : cellwise_divergence_norms(s.mesh, s.dofmap, field.velocity))
    CHECK(norm < 1e-10);
}

TEST_CASE("small-viscosity system solves within the residual tolerance") {
  const Setup s(8, ElementPairName::TaylorHood);
  const Eigen::VectorXd rhs_v = assemble_load(
      s.mesh, s.dofmap, [](Vec2 x, double) -> Vec2 { return {x.y, x.x}; }, 0.0);
  const Eigen::VectorXd rhs_p = Eigen::VectorXd::Zero(s.dofmap.n_pressure_dofs);
  const Eigen::VectorXd g = Eigen::VectorXd::Zero(s.dofmap.dirichlet.size());
  const auto [field, report] = solve_saddle(s.sys, s.dofmap, 1833.3, 1e-6,
                                            nullptr, rhs_v, rhs_p, g);
  CHECK(report.relative_residual <= 1e-11);
}

TEST_CASE("solves are deterministic") {
  const Setup s(2, ElementPairName::Mini);
  const Eigen::VectorXd rhs_v = assemble_load(
      s.mesh, s.dofmap,
      [](Vec2 x, double) -> Vec2 { return {std::sin(x.x), std::cos(x.y)}; },
      0.0);
  const Eigen::VectorXd rhs_p = Eigen::VectorXd::Zero(s.dofmap.n_pressure_dofs);
  const Eigen::VectorXd g = Eigen::VectorXd::Zero(s.dofmap.dirichlet.size());
  const auto [f1, r1] =
      solve_saddle(s.sys, s.dofmap, 1.0, 0.5, nullptr, rhs_v, rhs_p, g);
  const auto [f2, r2] =
      solve_saddle(s.sys, s.dofmap, 1.0, 0.5, nullptr, rhs_v, rhs_p, g);
  CHECK((f1.velocity - f2.velocity).lpNorm<Eigen::Infinity>() == 0.0);
  CHECK((f1.pressure - f2.pressure).lpNorm<Eigen::Infinity>() == 0.0);
}

TEST_CASE("missing mean constraint is flagged as singular") {
  const Setup base(1, ElementPairName::TaylorHood);
  SaddleSystem broken = base.sys;
  broken.mean_row.setZero();  // multiplier column vanishes -> singular
  const SaddleOperator op(broken, base.dofmap, 1.0, 1.0);
  CHECK_FALSE(op.factorization_ok());
  const Eigen::VectorXd rhs_v =
      Eigen::VectorXd::Zero(base.dofmap.n_velocity_dofs);
  const Eigen::VectorXd rhs_p =
      Eigen::VectorXd::Zero(base.dofmap.n_pressure_dofs);
  const Eigen::VectorXd g = Eigen::VectorXd::Zero(base.dofmap.dirichlet.size());
  CHECK_THROWS_AS(op.solve(rhs_v, rhs_p, g), std::runtime_error);
}

TEST_CASE("dirichlet elimination") {
  const Setup s(2, ElementPairName::TaylorHood);

  SUBCASE("homogeneous data zeroes the boundary dofs exactly") {
    const Eigen::VectorXd rhs_v = assemble_load(
        s.mesh, s.dofmap, [](Vec2, double) -> Vec2 { return {1.0, 1.0}; },
        0.0);
    const Eigen::VectorXd rhs_p =
        Eigen::VectorXd::Zero(s.dofmap.n_pressure_dofs);
    const Eigen::VectorXd g = Eigen::VectorXd::Zero(s.dofmap.dirichlet.size());
    const auto [field, report] =
        solve_saddle(s.sys, s.dofmap, 1.0, 1.0, nullptr, rhs_v, rhs_p, g);
    for (const DirichletDof& d : s.dofmap.dirichlet)
      CHECK(field.velocity[d.dof] == 0.0);
  }

  SUBCASE("inhomogeneous data lands exactly on the boundary dofs") {
    const VelocityFn g_fn = [](Vec2 x, double) -> Vec2 {
      return {std::cos(x.y), std::sin(x.x)};
    };
    const Eigen::VectorXd rhs_v =
        Eigen::VectorXd::Zero(s.dofmap.n_velocity_dofs);
    const Eigen::VectorXd rhs_p =
        Eigen::VectorXd::Zero(s.dofmap.n_pressure_dofs);
    const Eigen::VectorXd g = dirichlet_values(s.dofmap, g_fn, 0.0);
    const auto [field, report] =
        solve_saddle(s.sys, s.dofmap, 1.0, 1.0, nullptr, rhs_v, rhs_p, g);
    for (size_t i = 0; i < s.dofmap.dirichlet.size(); ++i)
      CHECK(field.velocity[s.dofmap.dirichlet[i].dof] ==
            doctest::Approx(g[i]).epsilon(1e-13));
  }

  SUBCASE("eliminated stiffness block is positive definite") {
    std::vector<Triplet> entries;
    const CsrMatrix& a = s.sys.stiffness;
    for (int r = 0; r < a.rows; ++r)
      for (int k = a.row_offsets[r]; k < a.row_offsets[r + 1]; ++k)
        entries.push_back({r, a.col_indices[k], a.values[k]});
    const DirichletSystem eliminated =
        apply_dirichlet(entries, a.rows, s.dofmap.dirichlet);
    std::vector<Eigen::Triplet<double>> eig;
    for (const Triplet& t : eliminated.matrix)
      eig.emplace_back(t.row, t.col, t.value);
    Eigen::SparseMatrix<double> m(a.rows, a.cols);
    m.setFromTriplets(eig.begin(), eig.end());
    Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> llt(m);
    CHECK(llt.info() == Eigen::Success);  // Cholesky exists: SPD
  }
}
