// Copyright (c) 2026 The prfem authors
// SPDX-License-Identifier: Apache-2.0
//
// Convergence-study driver: runs element x viscosity x mesh-level grids
// for the Stokes and vortex-decay benchmarks and emits one CSV row per
// cell. Exit codes: 0 success, 1 any cell failed, 2 table-signature check
// failed.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "prfem/experiments.hpp"

int main(int argc, char** argv) {
  CLI::App app{
      "Mixed finite element convergence studies for time-dependent "
      "incompressible flow"};

  prfem::ExperimentConfig config;
  std::string elements = "th,sv,mini,cr";
  std::string init = "nodal";
  std::string out = "-";
  bool check_tables = false;
  bool deep = false;

  app.add_option("--problem", config.problem, "stokes or chorin")
      ->check(CLI::IsMember({"stokes", "chorin"}))
      ->capture_default_str();
  app.add_option("--element", elements,
                 "comma-separated subset of th,sv,mini,cr")
      ->capture_default_str();
  app.add_option("--nu", config.nus, "viscosities")
      ->delimiter(',')
      ->capture_default_str();
  app.add_option("--levels", config.levels, "grid parameters n (h = 1/n)")
      ->delimiter(',')
      ->capture_default_str();
  app.add_option("--dt", config.dt, "time step")->capture_default_str();
  app.add_option("--t-end", config.t_end, "end time")->capture_default_str();
  app.add_option("--init", init, "history startup: nodal or helmholtz")
      ->check(CLI::IsMember({"nodal", "helmholtz"}))
      ->capture_default_str();
  app.add_option("--out", out, "CSV output path, - for stdout")
      ->capture_default_str();
  app.add_flag("--check-tables", check_tables,
               "assert the qualitative convergence signature (exit 2 on "
               "violation)");
  app.add_flag("--deep", deep, "append the n=128 level (minutes, more memory)");
  app.add_option("--jobs", config.jobs,
                 "worker pool size (0 = hardware concurrency)");
  app.add_flag("--timing", config.timing,
               "fill the wall_ms column (output no longer byte-reproducible)");

  CLI11_PARSE(app, argc, argv);

  try {
    config.elements.clear();
    std::stringstream stream(elements);
    std::string token;
    while (std::getline(stream, token, ','))
      if (!token.empty())
        config.elements.push_back(prfem::pair_from_name(token));
    config.init = (init == "helmholtz") ? prfem::InitMode::Helmholtz
                                        : prfem::InitMode::Nodal;
    if (deep) config.levels.push_back(128);

    const prfem::StudyResult result = prfem::run_study(config);
    const std::string csv = prfem::to_csv(config, result);
    if (out == "-") {
      std::cout << csv;
    } else {
      std::ofstream file(out, std::ios::binary);
      if (!file) throw std::runtime_error("cannot open output file " + out);
      file << csv;
    }

    if (result.any_failed) {
      std::cerr << "prfem_study: one or more cells failed\n";
      return 1;
    }
    if (check_tables) {
      std::string message;
      if (!check_table_signature(config, result, &message)) {
        std::cerr << "prfem_study: table signature check failed\n" << message;
        return 2;
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "prfem_study: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
