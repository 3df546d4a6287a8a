// Copyright (c) 2026 The prfem authors
// SPDX-License-Identifier: Apache-2.0

#include "prfem/problems.hpp"

#include <cmath>
#include <random>

namespace prfem {

FlowProblem stokes_manufactured(double nu) {
  if (nu <= 0.0)
    throw std::invalid_argument("stokes_manufactured: nu must be positive");
  FlowProblem p;
  p.name = "stokes";
  p.nu = nu;
  p.end_time = 0.01;
  p.is_nse = false;
  p.velocity = [](Vec2 x, double t) -> Vec2 {
    return {std::cos(x.y) * (1.0 + t), std::sin(x.x) * (1.0 + t)};
  };
  p.velocity_gradient = [](Vec2 x, double t) -> Mat2 {
    return {0.0, -std::sin(x.y) * (1.0 + t), std::cos(x.x) * (1.0 + t), 0.0};
  };
  // mean of sin(x+y) over the unit square
  const double mean = 2.0 * std::sin(1.0) - std::sin(2.0);
  p.pressure = [mean](Vec2 x, double) {
    return std::sin(x.x + x.y) - mean;
  };
  p.pressure_gradient = [](Vec2 x, double) -> Vec2 {
    const double c = std::cos(x.x + x.y);
    return {c, c};
  };
  // f = u_t - nu*lap(u) + grad(p)
  p.forcing = [nu](Vec2 x, double t) -> Vec2 {
    const double gp = std::cos(x.x + x.y);
    return {std::cos(x.y) * (1.0 + nu * (1.0 + t)) + gp,
            std::sin(x.x) * (1.0 + nu * (1.0 + t)) + gp};
  };
  return p;
}

FlowProblem chorin_vortex(double nu, int n_waves) {
  if (nu < 0.0 || n_waves < 1)
    throw std::invalid_argument("chorin_vortex: need nu >= 0, n_waves >= 1");
  const double k = n_waves * M_PI;
  FlowProblem p;
  p.name = "chorin";
  p.nu = nu;
  p.end_time = 0.01;
  p.is_nse = true;
  p.velocity = [k, nu](Vec2 x, double t) -> Vec2 {
    const double decay = std::exp(-2.0 * k * k * nu * t);
    return {-std::cos(k * x.x) * std::sin(k * x.y) * decay,
            std::sin(k * x.x) * std::cos(k * x.y) * decay};
  };
  p.velocity_gradient = [k, nu](Vec2 x, double t) -> Mat2 {
    const double decay = std::exp(-2.0 * k * k * nu * t);
    const double sx = std::sin(k * x.x), cx = std::cos(k * x.x);
    const double sy = std::sin(k * x.y), cy = std::cos(k * x.y);
    return {k * sx * sy * decay, -k * cx * cy * decay,
            k * cx * cy * decay, -k * sx * sy * decay};
  };
  // The convection term equals grad(1/4 (cos 2kx + cos 2ky) decay^2), so
  // the exact pressure decays with the squared velocity factor.
  p.pressure = [k, nu](Vec2 x, double t) {
    const double decay2 = std::exp(-4.0 * k * k * nu * t);
    return -0.25 * (std::cos(2.0 * k * x.x) + std::cos(2.0 * k * x.y)) *
           decay2;
  };
  p.pressure_gradient = [k, nu](Vec2 x, double t) -> Vec2 {
    const double decay2 = std::exp(-4.0 * k * k * nu * t);
    return {0.5 * k * std::sin(2.0 * k * x.x) * decay2,
            0.5 * k * std::sin(2.0 * k * x.y) * decay2};
  };
  p.forcing = [](Vec2, double) -> Vec2 { return {0.0, 0.0}; };
  return p;
}

FlowProblem patch_flow(double nu) {
  FlowProblem p;
  p.name = "patch";
  p.nu = nu;
  p.end_time = 0.01;
  p.is_nse = false;
  p.velocity = [](Vec2 x, double t) -> Vec2 {
    const double s = 1.0 + t * t * t;
    return {x.y * s, -x.x * s};
  };
  p.velocity_gradient = [](Vec2, double t) -> Mat2 {
    const double s = 1.0 + t * t * t;
    return {0.0, s, -s, 0.0};
  };
  p.pressure = [](Vec2 x, double) { return x.x + x.y - 1.0; };
  p.pressure_gradient = [](Vec2, double) -> Vec2 { return {1.0, 1.0}; };
  p.forcing = [](Vec2 x, double t) -> Vec2 {
    const double dt = 3.0 * t * t;
    return {x.y * dt + 1.0, -x.x * dt + 1.0};
  };
  return p;
}

namespace {

// Fourth-order central differences; the closed forms are entire, so
// stencil points may leave the unit square. Time derivatives use a smaller
// step: exponential decay rates up to ~2 n^2 pi^2 nu make high time
// derivatives large.
constexpr double kFdStep = 1e-3;
constexpr double kFdTimeStep = 1e-4;

template <typename F>
double fd1(const F& f, double h = kFdStep) {
  return (-f(2.0 * h) + 8.0 * f(h) - 8.0 * f(-h) + f(-2.0 * h)) / (12.0 * h);
}

template <typename F>
double fd2(const F& f, double h = kFdStep) {
  return (-f(2.0 * h) + 16.0 * f(h) - 30.0 * f(0.0) + 16.0 * f(-h) -
          f(-2.0 * h)) /
         (12.0 * h * h);
}

Vec2 convection_term(const FlowProblem& p, Vec2 x, double t) {
  const Vec2 u = p.velocity(x, t);
  const Mat2 g = p.velocity_gradient(x, t);
  return {u.x * g.xx + u.y * g.xy, u.x * g.yx + u.y * g.yy};
}

}  // namespace

OracleReport validate_problem(const FlowProblem& p, int samples,
                              unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> time(0.0, p.end_time);

  OracleReport report;
  for (int s = 0; s < samples; ++s) {
    const Vec2 x{unit(rng), unit(rng)};
    const double t = time(rng);

    const Vec2 ut = {
        fd1([&](double d) { return p.velocity(x, t + d).x; }, kFdTimeStep),
        fd1([&](double d) { return p.velocity(x, t + d).y; }, kFdTimeStep)};
    const Vec2 lap = {
        fd2([&](double d) { return p.velocity({x.x + d, x.y}, t).x; }) +
            fd2([&](double d) { return p.velocity({x.x, x.y + d}, t).x; }),
        fd2([&](double d) { return p.velocity({x.x + d, x.y}, t).y; }) +
            fd2([&](double d) { return p.velocity({x.x, x.y + d}, t).y; })};
    const Vec2 grad_p = {
        fd1([&](double d) { return p.pressure({x.x + d, x.y}, t); }),
        fd1([&](double d) { return p.pressure({x.x, x.y + d}, t); })};

    Vec2 residual = {ut.x - p.nu * lap.x + grad_p.x - p.forcing(x, t).x,
                     ut.y - p.nu * lap.y + grad_p.y - p.forcing(x, t).y};
    if (p.is_nse) {
      const Vec2 conv = convection_term(p, x, t);
      residual.x += conv.x;
      residual.y += conv.y;
    }
    report.max_momentum_residual =
        std::max(report.max_momentum_residual,
                 std::max(std::abs(residual.x), std::abs(residual.y)));

    const double div =
        fd1([&](double d) { return p.velocity({x.x + d, x.y}, t).x; }) +
        fd1([&](double d) { return p.velocity({x.x, x.y + d}, t).y; });
    report.max_divergence = std::max(report.max_divergence, std::abs(div));

    const Mat2 fd_grad = {
        fd1([&](double d) { return p.velocity({x.x + d, x.y}, t).x; }),
        fd1([&](double d) { return p.velocity({x.x, x.y + d}, t).x; }),
        fd1([&](double d) { return p.velocity({x.x + d, x.y}, t).y; }),
        fd1([&](double d) { return p.velocity({x.x, x.y + d}, t).y; })};
    const Mat2 diff = fd_grad - p.velocity_gradient(x, t);
    report.max_gradient_mismatch =
        std::max(report.max_gradient_mismatch, std::sqrt(frobenius2(diff)));

    const Vec2 gp_analytic = p.pressure_gradient(x, t);
    report.max_gradient_mismatch = std::max(
        report.max_gradient_mismatch,
        std::max(std::abs(grad_p.x - gp_analytic.x),
                 std::abs(grad_p.y - gp_analytic.y)));
  }
  return report;
}

double max_convection_curl(const FlowProblem& p, int samples, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> time(0.0, p.end_time);

  double max_curl = 0.0;
  for (int s = 0; s < samples; ++s) {
    const Vec2 x{unit(rng), unit(rng)};
    const double t = time(rng);
    const double curl =
        fd1([&](double d) {
          return convection_term(p, {x.x + d, x.y}, t).y;
        }) -
        fd1([&](double d) {
          return convection_term(p, {x.x, x.y + d}, t).x;
        });
    max_curl = std::max(max_curl, std::abs(curl));
  }
  return max_curl;
}

}  // namespace prfem
