// Copyright (c) 2026 The prfem authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include "prfem/spaces.hpp"

namespace prfem {

/// Benchmark case with closed-form solution and forcing. Exact pressures
/// are shifted to zero mean over the unit square; the shift leaves the
/// forcing unchanged.
struct FlowProblem {
  std::string name;
  double nu = 1.0;
  double end_time = 0.01;
  bool is_nse = false;
  VelocityFn velocity;
  TensorFn velocity_gradient;
  ScalarFn pressure;
  VelocityFn pressure_gradient;
  VelocityFn forcing;
};

/// u = (cos y, sin x)(1+t), p = sin(x+y) - mean; forcing from the Stokes
/// momentum balance for the given viscosity.
FlowProblem stokes_manufactured(double nu);

/// Decaying vortex array, an exact Navier-Stokes solution with zero
/// forcing: the convection term is a gradient balanced entirely by the
/// pressure. The velocity decays like exp(-2 n^2 pi^2 nu t) and the
/// pressure like exp(-4 n^2 pi^2 nu t).
FlowProblem chorin_vortex(double nu, int n_waves);

/// u = (y, -x)(1+t^3), p = x+y-1: divergence-free, linear in space, cubic
/// in time. In-space for the P1+ velocity families and exactly integrated
/// by a third-order time stepper, so discrete solves reproduce it to
/// solver accuracy.
FlowProblem patch_flow(double nu);

/// Finite-difference validation of a problem's closed forms (independent
/// of any assembly/solver path). Fourth-order stencils; entire functions,
/// so stencils may leave the domain.
struct OracleReport {
  double max_momentum_residual = 0.0;  // u_t (+ (u.grad)u) - nu lap u + grad p - f
  double max_divergence = 0.0;
  double max_gradient_mismatch = 0.0;  // analytic vs FD velocity/pressure gradients
};

OracleReport validate_problem(const FlowProblem& problem, int samples = 100,
                              unsigned seed = 12345);

/// max |curl((u . grad) u)| over random points: zero iff the convection
/// term is a pure gradient (the property that lets the pressure absorb
/// it).
double max_convection_curl(const FlowProblem& problem, int samples = 100,
                           unsigned seed = 12345);

}  // namespace prfem
