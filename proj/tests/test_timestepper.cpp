// Copyright (c) 2026 The prfem authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <stdexcept>

#include "prfem/analysis.hpp"
#include "prfem/timestepper.hpp"

using namespace prfem;

namespace {

FlowProblem rest_problem() {
  FlowProblem p;
  p.name = "rest";
  p.nu = 1.0;
  p.end_time = 0.01;
  p.velocity = [](Vec2, double) -> Vec2 { return {0.0, 0.0}; };
  p.velocity_gradient = [](Vec2, double) -> Mat2 { return {}; };
  p.pressure = [](Vec2, double) { return 0.0; };
  p.pressure_gradient = [](Vec2, double) -> Vec2 { return {0.0, 0.0}; };
  p.forcing = [](Vec2, double) -> Vec2 { return {0.0, 0.0}; };
  return p;
}

}  // namespace

TEST_CASE("BDF3 coefficients differentiate cubics exactly") {
  const double dt = 0.1;
  const double t = 0.7;
  for (int k = 0; k <= 3; ++k) {
    auto f = [k](double s) { return std::pow(s, k); };
    const double derivative =
        (11.0 / 6.0 * f(t) - 3.0 * f(t - dt) + 1.5 * f(t - 2.0 * dt) -
         f(t - 3.0 * dt) / 3.0) /
        dt;
    const double exact = k == 0 ? 0.0 : k * std::pow(t, k - 1);
    CHECK(derivative == doctest::Approx(exact).epsilon(1e-12));
  }
}

TEST_CASE("initialization") {
  const Mesh mesh = alfeld_split(build_uniform_mesh(2));
  const ElementPair pair = element_pair(ElementPairName::TaylorHood);

  SUBCASE("nodal history at 0, dt, 2dt; t = 2dt") {
    Bdf3Integrator integrator(mesh, pair, stokes_manufactured(1.0), 1e-3);
    CHECK(integrator.state().t == doctest::Approx(0.002).epsilon(1e-14));
    CHECK(integrator.snapshots().size() == 3);
  }

  SUBCASE("time-constant solutions give identical history entries") {
    Bdf3Integrator integrator(mesh, pair, rest_problem(), 1e-3);
    const auto& h = integrator.state().history;
    CHECK((h[0] - h[2]).lpNorm<Eigen::Infinity>() == 0.0);
    CHECK((h[1] - h[2]).lpNorm<Eigen::Infinity>() == 0.0);
  }

  SUBCASE("helmholtz mode projects the first level only") {
    const FlowProblem problem = stokes_manufactured(1.0);
    Bdf3Integrator nodal(mesh, pair, problem, 1e-3, InitMode::Nodal);
    Bdf3Integrator projected(mesh, pair, problem, 1e-3, InitMode::Helmholtz);
    CHECK(projected.state().t == doctest::Approx(0.002).epsilon(1e-14));
    const double level0_gap = (projected.state().history[0] -
                               nodal.state().history[0])
                                  .lpNorm<Eigen::Infinity>();
    const double level1_gap = (projected.state().history[1] -
                               nodal.state().history[1])
                                  .lpNorm<Eigen::Infinity>();
    CHECK(level0_gap > 1e-8);   // projection differs from the interpolant
    CHECK(level1_gap == 0.0);   // later levels stay nodal
  }

  SUBCASE("invalid dt rejected") {
    CHECK_THROWS_AS(Bdf3Integrator(mesh, pair, rest_problem(), 0.0),
                    std::invalid_argument);
  }
}

TEST_CASE("zero data stays at rest") {
  const Mesh mesh = alfeld_split(build_uniform_mesh(2));
  Bdf3Integrator integrator(mesh, element_pair(ElementPairName::TaylorHood),
                            rest_problem(), 1e-3);
  integrator.run(0.01);
  CHECK(integrator.velocity().lpNorm<Eigen::Infinity>() < 1e-13);
  CHECK(integrator.pressure().lpNorm<Eigen::Infinity>() < 1e-12);
}

TEST_CASE("run ends at T exactly and counts 10 levels for dt = 1e-3") {
  const Mesh mesh = alfeld_split(build_uniform_mesh(2));
  Bdf3Integrator integrator(mesh, element_pair(ElementPairName::TaylorHood),
                            stokes_manufactured(1.0), 1e-3);
  integrator.run(0.01);
  CHECK(std::abs(integrator.state().t - 0.01) < 1e-15);
  CHECK(integrator.snapshots().size() == 11);  // levels t = 0 .. 10 dt

  SUBCASE("t_end must be a multiple of dt with at least 3 steps") {
    Bdf3Integrator bad(mesh, element_pair(ElementPairName::TaylorHood),
                       stokes_manufactured(1.0), 1e-3);
    CHECK_THROWS_AS(bad.run(0.0025), std::invalid_argument);
    CHECK_THROWS_AS(bad.run(0.002), std::invalid_argument);
  }
}

TEST_CASE("cubic-in-time in-space solution reproduced to 1e-10") {
  // u = (y,-x)(1+t^3) is linear in space (exactly representable) and cubic
  // in time (BDF3-exact), so the only error left is solver accuracy.
  const FlowProblem problem = patch_flow(1.0);
  const Mesh mesh = alfeld_split(build_uniform_mesh(2));
  for (auto name : {ElementPairName::TaylorHood, ElementPairName::ScottVogelius,
                    ElementPairName::Mini}) {
    Bdf3Integrator integrator(mesh, element_pair(name), problem, 1e-3);
    integrator.run(0.01);
    const double error = l2_error(mesh, integrator.dofmap(),
                                  integrator.velocity(), problem.velocity,
                                  0.01);
    CHECK(error < 1e-10);
  }
}

TEST_CASE("every accepted step is discretely divergence-free") {
  const Mesh mesh = alfeld_split(build_uniform_mesh(4));
  for (auto name : {ElementPairName::TaylorHood, ElementPairName::CrouzeixRaviart}) {
    Bdf3Integrator integrator(mesh, element_pair(name),
                              stokes_manufactured(1e-6), 1e-3);
    integrator.run(0.01);
    CHECK(integrator.max_discrete_divergence() < 1e-10);
    CHECK(integrator.max_step_residual() <= kResidualTolerance);
  }
}

TEST_CASE("halving dt changes the final error by less than 1 percent") {
  // Spatial error dominates the smooth-in-time Stokes test by design.
  const FlowProblem problem = stokes_manufactured(1.0);
  const Mesh mesh = alfeld_split(build_uniform_mesh(8));
  double errors[2];
  int idx = 0;
  for (double dt : {1e-3, 5e-4}) {
    Bdf3Integrator integrator(mesh, element_pair(ElementPairName::TaylorHood),
                              problem, dt);
    integrator.run(0.01);
    errors[idx++] = l2_error(mesh, integrator.dofmap(), integrator.velocity(),
                             problem.velocity, 0.01);
  }
  CHECK(std::abs(errors[0] - errors[1]) / errors[0] < 0.01);
}

TEST_CASE("NSE path: chorin runs and converges qualitatively") {
  const FlowProblem problem = chorin_vortex(1e-6, 2);
  double errors[2];
  int idx = 0;
  for (int grid : {4, 8}) {
    const Mesh mesh = alfeld_split(build_uniform_mesh(grid));
    Bdf3Integrator integrator(
        mesh, element_pair(ElementPairName::ScottVogelius), problem, 1e-3);
    integrator.run(0.01);
    errors[idx++] = l2_error(mesh, integrator.dofmap(), integrator.velocity(),
                             problem.velocity, 0.01);
  }
  // second-order-plus convergence expected for the divergence-free pair
  CHECK(std::log2(errors[0] / errors[1]) > 2.0);
}
