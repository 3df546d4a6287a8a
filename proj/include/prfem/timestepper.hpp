// Copyright (c) 2026 The prfem authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>

#include "prfem/linsolve.hpp"
#include "prfem/problems.hpp"

namespace prfem {

/// Startup choices for the three BDF3 history levels at t = 0, dt, 2dt:
///  - Nodal: nodal interpolants of the exact solution (table runs)
///  - Helmholtz: divergence-free L2 projection at t = 0, nodal for the rest
///  - HelmholtzAll: projection at all three levels (zero supercloseness
///    error at startup; used by the theorem-bound evaluations)
enum class InitMode { Nodal, Helmholtz, HelmholtzAll };

struct Bdf3State {
  double dt = 0.0;
  double t = 0.0;
  std::array<Eigen::VectorXd, 3> history;  // u^{n-2}, u^{n-1}, u^n
};

/// BDF3 integration of the discrete (Navier-)Stokes system. Stokes runs
/// factorize the saddle operator once; NSE runs refactorize each step with
/// the third-order extrapolated advecting field.
class Bdf3Integrator {
 public:
  Bdf3Integrator(const Mesh& mesh, const ElementPair& pair,
                 const FlowProblem& problem, double dt,
                 InitMode mode = InitMode::Nodal);

  /// Advances one step: solves
  ///   (11/(6 dt)) M u + nu A u (+ N(u*) u) - B^T p = f(t+dt)
  ///     + (1/dt) M (3 u^n - 3/2 u^{n-1} + 1/3 u^{n-2})
  /// with B u = 0, the pressure-mean constraint, and Dirichlet data at
  /// t + dt; u* = 3 u^n - 3 u^{n-1} + u^{n-2}.
  void bdf3_step();

  /// Steps until reaching t_end (a multiple of dt, at least 3 dt).
  void run(double t_end);

  const Bdf3State& state() const { return state_; }
  const Eigen::VectorXd& velocity() const { return state_.history[2]; }
  const Eigen::VectorXd& pressure() const { return pressure_; }
  const Mesh& mesh() const { return *mesh_; }
  const DofMap& dofmap() const { return dofmap_; }
  const SaddleSystem& system() const { return sys_; }
  const FlowProblem& problem() const { return problem_; }

  /// Velocity coefficients at every completed time level from t = 0.
  const std::vector<Eigen::VectorXd>& snapshots() const { return snapshots_; }

  double max_step_residual() const { return max_residual_; }
  /// max over steps of ||B u^{n+1}||_inf
  double max_discrete_divergence() const { return max_divergence_; }

 private:
  const Mesh* mesh_;
  ElementPair pair_;
  FlowProblem problem_;
  DofMap dofmap_;
  SaddleSystem sys_;
  std::unique_ptr<SaddleOperator> op_;
  double alpha_ = 0.0;
  Bdf3State state_;
  long step_count_ = 2;  // completed time levels
  Eigen::VectorXd pressure_;
  std::vector<Eigen::VectorXd> snapshots_;
  double max_residual_ = 0.0;
  double max_divergence_ = 0.0;
};

}  // namespace prfem
