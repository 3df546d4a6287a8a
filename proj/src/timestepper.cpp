// Copyright (c) 2026 The prfem authors
// SPDX-License-Identifier: Apache-2.0

#include "prfem/timestepper.hpp"

#include <cmath>
#include <stdexcept>

#include "prfem/analysis.hpp"

namespace prfem {

Bdf3Integrator::Bdf3Integrator(const Mesh& mesh, const ElementPair& pair,
                               const FlowProblem& problem, double dt,
                               InitMode mode)
    : mesh_(&mesh), pair_(pair), problem_(problem) {
  if (dt <= 0.0) throw std::invalid_argument("Bdf3Integrator: dt must be > 0");
  dofmap_ = build_dof_map(mesh, pair);
  sys_ = assemble_saddle_system(mesh, dofmap_);
  alpha_ = 11.0 / (6.0 * dt);

  state_.dt = dt;
  for (int k = 0; k < 3; ++k) {
    const double tk = k * dt;
    const bool project = (mode == InitMode::HelmholtzAll) ||
                         (mode == InitMode::Helmholtz && k == 0);
    if (project) {
      state_.history[k] =
          helmholtz_projection(mesh, dofmap_, sys_, problem_.velocity, tk,
                               &problem_.velocity)
              .velocity;
    } else {
      state_.history[k] =
          interpolate_velocity(mesh, dofmap_, problem_.velocity, tk);
    }
    snapshots_.push_back(state_.history[k]);
  }
  state_.t = 2.0 * dt;

  if (!problem_.is_nse)
    op_ = std::make_unique<SaddleOperator>(sys_, dofmap_, alpha_, problem_.nu);
}

void Bdf3Integrator::bdf3_step() {
  const double dt = state_.dt;
  const double t_next = (step_count_ + 1) * dt;
  const Eigen::VectorXd& u0 = state_.history[0];  // u^{n-2}
  const Eigen::VectorXd& u1 = state_.history[1];  // u^{n-1}
  const Eigen::VectorXd& u2 = state_.history[2];  // u^n

  Eigen::VectorXd rhs_velocity =
      assemble_load(*mesh_, dofmap_, problem_.forcing, t_next);
  const Eigen::VectorXd history_combo =
      3.0 * u2 - 1.5 * u1 + (1.0 / 3.0) * u0;
  rhs_velocity += (1.0 / dt) * (sys_.mass * history_combo);

  if (problem_.is_nse) {
    const Eigen::VectorXd extrapolated = 3.0 * u2 - 3.0 * u1 + u0;
    const CsrMatrix convection =
        assemble_convection(*mesh_, dofmap_, extrapolated);
    if (op_)
      op_->set_convection(sys_, dofmap_, convection);
    else
      op_ = std::make_unique<SaddleOperator>(sys_, dofmap_, alpha_,
                                             problem_.nu, &convection);
  }

  const Eigen::VectorXd g = dirichlet_values(dofmap_, problem_.velocity, t_next);
  const Eigen::VectorXd rhs_pressure =
      Eigen::VectorXd::Zero(dofmap_.n_pressure_dofs);

  Eigen::VectorXd x;
  SolverReport report;
  try {
    x = op_->solve(rhs_velocity, rhs_pressure, g, &report);
  } catch (const std::exception& e) {
    throw std::runtime_error("bdf3_step at t=" + std::to_string(t_next) +
                             ": " + e.what());
  }

  state_.history[0] = u1;
  state_.history[1] = u2;
  state_.history[2] = x.head(dofmap_.n_velocity_dofs);
  pressure_ = x.segment(dofmap_.n_velocity_dofs, dofmap_.n_pressure_dofs);
  state_.t = t_next;
  ++step_count_;
  snapshots_.push_back(state_.history[2]);

  max_residual_ = std::max(max_residual_, report.relative_residual);
  const Eigen::VectorXd bu = sys_.divergence * state_.history[2];
  max_divergence_ = std::max(max_divergence_, bu.lpNorm<Eigen::Infinity>());
}

void Bdf3Integrator::run(double t_end) {
  const double steps_real = t_end / state_.dt;
  const long n_steps = std::lround(steps_real);
  if (n_steps < 3 || std::abs(steps_real - n_steps) > 1e-9 * n_steps)
    throw std::invalid_argument(
        "Bdf3Integrator::run: t_end must be an integer multiple of dt, >= 3 dt");
  while (step_count_ < n_steps) bdf3_step();
}

}  // namespace prfem
