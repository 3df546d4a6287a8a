// Copyright (c) 2026 The prfem authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "prfem/analysis.hpp"
#include "prfem/timestepper.hpp"

namespace prfem {

/// One element x viscosity x mesh-level grid of runs.
struct ExperimentConfig {
  std::string problem = "stokes";  // stokes | chorin
  std::vector<ElementPairName> elements = {
      ElementPairName::TaylorHood, ElementPairName::ScottVogelius,
      ElementPairName::Mini, ElementPairName::CrouzeixRaviart};
  std::vector<double> nus = {1.0, 1e-6};
  std::vector<int> levels = {8, 16, 32, 64};
  double dt = 1e-3;
  double t_end = 0.01;
  InitMode init = InitMode::Nodal;
  int n_waves = 2;
  int jobs = 0;        // worker pool size; 0 = hardware concurrency
  bool timing = false; // fill the wall_ms column (breaks byte determinism)
};

struct CellResult {
  ElementPairName element = ElementPairName::TaylorHood;
  double nu = 0.0;
  int n = 0;
  double error_l2 = 0.0;
  double residual = 0.0;
  long wall_ms = 0;
  std::string failure;  // empty on success
};

struct StudyResult {
  std::vector<CellResult> cells;  // canonical order
  bool any_failed = false;
};

/// Runs every (element, nu, n) cell of the config on a bounded worker
/// pool. Results are in canonical order (element, nu, ascending n)
/// regardless of completion order; per-cell failures are recorded without
/// aborting the rest.
StudyResult run_study(const ExperimentConfig& config);

/// CSV with schema problem,element,nu,n,h,error_l2,rate,solver_residual,
/// wall_ms. The rate column is empty on each coarsest level and wall_ms is
/// empty unless timing was enabled, keeping default output byte-identical
/// across runs.
std::string to_csv(const ExperimentConfig& config, const StudyResult& result);

/// Asserts the qualitative convergence signature of the Stokes study:
/// optimal rates at nu=1; at nu=1e-6 only the divergence-free pair keeps
/// rate 3 while the rest degrade or lock. Returns false with diagnostics
/// on violation.
bool check_table_signature(const ExperimentConfig& config,
                           const StudyResult& result, std::string* message);

}  // namespace prfem
