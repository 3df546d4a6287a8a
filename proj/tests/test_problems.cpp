// Copyright (c) 2026 The prfem authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <stdexcept>

#include "prfem/assembly.hpp"
#include "prfem/problems.hpp"

using namespace prfem;

namespace {

double quadrature_mean(const ScalarFn& f, double t) {
  const Mesh mesh = build_uniform_mesh(16);
  const QuadratureRule rule = quadrature(8);
  double integral = 0.0;
  for (int k = 0; k < mesh.n_triangles(); ++k) {
    const auto& v = mesh.triangles[k].v;
    const Vec2 a = mesh.vertices[v[0]];
    const Vec2 b = mesh.vertices[v[1]];
    const Vec2 c = mesh.vertices[v[2]];
    const double det = cross(b - a, c - a);
    for (size_t q = 0; q < rule.points.size(); ++q) {
      const auto& l = rule.points[q];
      const Vec2 x{a.x * l[0] + b.x * l[1] + c.x * l[2],
                   a.y * l[0] + b.y * l[1] + c.y * l[2]};
      integral += det * rule.weights[q] * f(x, t);
    }
  }
  return integral;
}

}  // namespace

TEST_CASE("stokes manufactured solution") {
  SUBCASE("forcing at the origin, nu = 1") {
    const FlowProblem p = stokes_manufactured(1.0);
    const Vec2 f = p.forcing({0.0, 0.0}, 0.0);
    CHECK(f.x == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(f.y == doctest::Approx(1.0).epsilon(1e-14));
  }

  SUBCASE("PDE residual oracle at both viscosities") {
    for (double nu : {1.0, 1e-6}) {
      const OracleReport report = validate_problem(stokes_manufactured(nu));
      CHECK(report.max_momentum_residual < 1e-6);
      CHECK(report.max_divergence < 1e-6);
      CHECK(report.max_gradient_mismatch < 1e-6);
    }
  }

  SUBCASE("pressure has zero mean; the shift leaves the gradient alone") {
    const FlowProblem p = stokes_manufactured(1.0);
    CHECK(std::abs(quadrature_mean(p.pressure, 0.0)) < 1e-12);
  }

  SUBCASE("nu must be positive") {
    CHECK_THROWS_AS(stokes_manufactured(0.0), std::invalid_argument);
  }
}

TEST_CASE("chorin vortex decay") {
  SUBCASE("NSE residual oracle at both viscosities") {
    for (double nu : {1.0, 1e-6}) {
      const FlowProblem p = chorin_vortex(nu, 2);
      const OracleReport report = validate_problem(p);
      CHECK(report.max_momentum_residual < 1e-6);
      CHECK(report.max_divergence < 1e-6);
      CHECK(report.max_gradient_mismatch < 1e-6);
    }
  }

  SUBCASE("convection term is a pure gradient (curl-free)") {
    CHECK(max_convection_curl(chorin_vortex(1.0, 2)) < 1e-6);
    CHECK(max_convection_curl(chorin_vortex(1e-6, 2)) < 1e-6);
  }

  SUBCASE("convection is balanced exactly by the pressure gradient") {
    const FlowProblem p = chorin_vortex(1.0, 2);
    for (double tx : {0.13, 0.57, 0.88}) {
      const Vec2 x{tx, 1.0 - 0.4 * tx};
      const double t = 0.3 * tx * p.end_time;
      const Vec2 u = p.velocity(x, t);
      const Mat2 g = p.velocity_gradient(x, t);
      const Vec2 convection{u.x * g.xx + u.y * g.xy, u.x * g.yx + u.y * g.yy};
      const Vec2 gp = p.pressure_gradient(x, t);
      CHECK(std::abs(convection.x + gp.x) < 1e-12);
      CHECK(std::abs(convection.y + gp.y) < 1e-12);
    }
  }

  SUBCASE("forcing is identically zero and the pressure mean vanishes") {
    const FlowProblem p = chorin_vortex(1e-6, 2);
    CHECK(p.forcing({0.3, 0.7}, 0.005).x == 0.0);
    CHECK(p.forcing({0.3, 0.7}, 0.005).y == 0.0);
    CHECK(std::abs(quadrature_mean(p.pressure, 0.004)) < 1e-12);
  }

  SUBCASE("invalid parameters rejected") {
    CHECK_THROWS_AS(chorin_vortex(-1.0, 2), std::invalid_argument);
    CHECK_THROWS_AS(chorin_vortex(1.0, 0), std::invalid_argument);
  }
}

TEST_CASE("patch flow") {
  const FlowProblem p = patch_flow(1.0);
  const OracleReport report = validate_problem(p);
  CHECK(report.max_momentum_residual < 1e-6);
  CHECK(report.max_divergence < 1e-6);
  CHECK(std::abs(quadrature_mean(p.pressure, 0.0)) < 1e-13);
}
