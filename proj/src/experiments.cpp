// Copyright (c) 2026 The prfem authors
// SPDX-License-Identifier: Apache-2.0

#include "prfem/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <thread>

namespace prfem {

namespace {

void validate(const ExperimentConfig& config) {
  if (config.problem != "stokes" && config.problem != "chorin")
    throw std::invalid_argument("run_study: unknown problem " + config.problem);
  if (config.dt <= 0.0)
    throw std::invalid_argument("run_study: dt must be positive");
  const double steps = config.t_end / config.dt;
  if (std::abs(steps - std::lround(steps)) > 1e-9 * std::max(1.0, steps) ||
      std::lround(steps) < 3)
    throw std::invalid_argument(
        "run_study: t_end/dt must be an integer >= 3 (BDF3 history)");
  if (config.elements.empty() || config.nus.empty() || config.levels.empty())
    throw std::invalid_argument("run_study: empty experiment grid");
  for (int n : config.levels)
    if (n < 2 || n % 2 != 0)
      throw std::invalid_argument(
          "run_study: levels must be even and >= 2 (h = 1/n is the post-split "
          "node resolution)");
}

// A level-n cell runs the Alfeld split of the (n/2) x (n/2) uniform grid:
// after the split the quadratic velocity nodes are spaced 1/n along the
// original grid lines, which is the nominal resolution h = 1/n the error
// tables are indexed by.
Mesh study_mesh(int n) { return alfeld_split(build_uniform_mesh(n / 2)); }

FlowProblem make_problem(const ExperimentConfig& config, double nu) {
  if (config.problem == "chorin") return chorin_vortex(nu, config.n_waves);
  return stokes_manufactured(nu);
}

CellResult run_cell(const ExperimentConfig& config, ElementPairName element,
                    double nu, int n) {
  CellResult result;
  result.element = element;
  result.nu = nu;
  result.n = n;
  const auto start = std::chrono::steady_clock::now();
  try {
    const FlowProblem problem = make_problem(config, nu);
    const OracleReport oracle = validate_problem(problem, 20);
    if (oracle.max_momentum_residual > 1e-6)
      throw std::runtime_error("problem fails PDE residual oracle");

    const Mesh mesh = study_mesh(n);
    Bdf3Integrator integrator(mesh, element_pair(element), problem, config.dt,
                              config.init);
    integrator.run(config.t_end);
    result.error_l2 = l2_error(mesh, integrator.dofmap(),
                               integrator.velocity(), problem.velocity,
                               config.t_end);
    result.residual = integrator.max_step_residual();
  } catch (const std::exception& e) {
    result.failure = e.what();
  }
  result.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  return result;
}

std::string format_double(const char* fmt, double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), fmt, value);
  return buffer;
}

}  // namespace

StudyResult run_study(const ExperimentConfig& config) {
  validate(config);

  struct Cell {
    ElementPairName element;
    double nu;
    int n;
  };
  std::vector<Cell> cells;
  std::vector<int> levels = config.levels;
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  for (ElementPairName element : config.elements)
    for (double nu : config.nus)
      for (int n : levels) cells.push_back({element, nu, n});

  StudyResult result;
  result.cells.resize(cells.size());

  unsigned jobs = config.jobs > 0 ? static_cast<unsigned>(config.jobs)
                                  : std::thread::hardware_concurrency();
  jobs = std::max(1u, std::min(jobs, static_cast<unsigned>(cells.size())));

  std::atomic<size_t> next{0};
  auto worker = [&]() {
    while (true) {
      const size_t idx = next.fetch_add(1);
      if (idx >= cells.size()) return;
      result.cells[idx] =
          run_cell(config, cells[idx].element, cells[idx].nu, cells[idx].n);
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  for (const CellResult& cell : result.cells)
    if (!cell.failure.empty()) result.any_failed = true;
  return result;
}

std::string to_csv(const ExperimentConfig& config, const StudyResult& result) {
  std::string csv = "problem,element,nu,n,h,error_l2,rate,solver_residual,wall_ms\n";
  const CellResult* previous = nullptr;
  for (const CellResult& cell : result.cells) {
    csv += config.problem + "," + short_name(cell.element) + ",";
    csv += format_double("%g", cell.nu) + ",";
    csv += std::to_string(cell.n) + ",";
    csv += format_double("%g", 1.0 / cell.n) + ",";
    if (!cell.failure.empty()) {
      std::string message = cell.failure;
      for (char& c : message)
        if (c == ',' || c == '\n') c = ';';
      csv += "FAILED:" + message + ",,,";
    } else {
      csv += format_double("%.6e", cell.error_l2) + ",";
      const bool halving = previous != nullptr &&
                           previous->element == cell.element &&
                           previous->nu == cell.nu &&
                           previous->failure.empty() &&
                           2 * previous->n == cell.n;
      if (halving)
        csv += format_double(
            "%.2f", std::log2(previous->error_l2 / cell.error_l2));
      csv += ",";
      csv += format_double("%.3e", cell.residual) + ",";
      if (config.timing) csv += std::to_string(cell.wall_ms);
    }
    csv += "\n";
    previous = &cell;
  }
  return csv;
}

namespace {

// Rates per (element, nu), keyed by level n, from a study result.
std::map<int, double> rates_for(const StudyResult& result,
                                ElementPairName element, double nu) {
  std::map<int, double> rates;
  const CellResult* previous = nullptr;
  for (const CellResult& cell : result.cells) {
    if (cell.element != element || cell.nu != nu || !cell.failure.empty())
      continue;
    if (previous && 2 * previous->n == cell.n)
      rates[cell.n] = std::log2(previous->error_l2 / cell.error_l2);
    previous = &cell;
  }
  return rates;
}

}  // namespace

bool check_table_signature(const ExperimentConfig& config,
                           const StudyResult& result, std::string* message) {
  bool ok = true;
  std::string diag;
  auto fail = [&](const std::string& what) {
    ok = false;
    diag += what + "\n";
  };

  for (double nu : config.nus) {
    const bool small_nu = nu < 1e-3;
    for (ElementPairName element : config.elements) {
      const auto rates = rates_for(result, element, nu);
      if (rates.empty()) continue;
      const std::string tag =
          short_name(element) + " nu=" + format_double("%g", nu);
      const double last = rates.rbegin()->second;
      switch (element) {
        case ElementPairName::ScottVogelius:
          for (const auto& [n, r] : rates)
            if (std::abs(r - 3.0) > 0.15)
              fail(tag + ": rate " + format_double("%.2f", r) +
                   " at n=" + std::to_string(n) + ", expected ~3");
          break;
        case ElementPairName::TaylorHood:
          if (!small_nu) {
            for (const auto& [n, r] : rates)
              if (std::abs(r - 3.0) > 0.15)
                fail(tag + ": rate " + format_double("%.2f", r) +
                     " at n=" + std::to_string(n) + ", expected ~3");
          } else {
            for (const auto& [n, r] : rates)
              if (n >= 32 && std::abs(r - 1.0) > 0.15)
                fail(tag + ": rate " + format_double("%.2f", r) +
                     " at n=" + std::to_string(n) + ", expected ~1 (locking)");
          }
          break;
        case ElementPairName::Mini:
          if (!small_nu) {
            for (const auto& [n, r] : rates)
              if (std::abs(r - 2.0) > 0.15)
                fail(tag + ": rate " + format_double("%.2f", r) +
                     " at n=" + std::to_string(n) + ", expected ~2");
          } else if (rates.size() >= 2) {
            const double first = rates.begin()->second;
            if (first < 1.7 || last > first - 0.2)
              fail(tag + ": rates should degrade from ~2 toward ~1, got " +
                   format_double("%.2f", first) + " .. " +
                   format_double("%.2f", last));
          }
          break;
        case ElementPairName::CrouzeixRaviart:
          if (small_nu) {
            for (const auto& [n, r] : rates)
              if (n >= 32 && std::abs(r) > 0.15)
                fail(tag + ": rate " + format_double("%.2f", r) +
                     " at n=" + std::to_string(n) + ", expected ~0 (locking)");
          } else if (last < 1.5) {
            fail(tag + ": finest rate " + format_double("%.2f", last) +
                 ", expected approaching ~2");
          }
          break;
      }
    }
  }
  if (message) *message = diag;
  return ok;
}

}  // namespace prfem
