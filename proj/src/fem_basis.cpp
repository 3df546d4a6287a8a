// Copyright (c) 2026 The prfem authors
// SPDX-License-Identifier: Apache-2.0

#include "prfem/fem_basis.hpp"

#include <cmath>
#include <stdexcept>

namespace prfem {

namespace {

// Gradients of the barycentric coordinates in reference (x,y).
constexpr Vec2 kBaryGrad[3] = {{-1.0, -1.0}, {1.0, 0.0}, {0.0, 1.0}};

}  // namespace

void ReferenceElement::eval(const std::array<double, 3>& l,
                            double* values) const {
  switch (family) {
    case Family::P0:
      values[0] = 1.0;
      return;
    case Family::P1:
      for (int i = 0; i < 3; ++i) values[i] = l[i];
      return;
    case Family::P2:
      for (int i = 0; i < 3; ++i) values[i] = l[i] * (2.0 * l[i] - 1.0);
      for (int e = 0; e < 3; ++e) values[3 + e] = 4.0 * l[e] * l[(e + 1) % 3];
      return;
    case Family::P1Bubble:
      for (int i = 0; i < 3; ++i) values[i] = l[i];
      values[3] = 27.0 * l[0] * l[1] * l[2];
      return;
    case Family::P1NC:
      // Basis for edge k = (k, k+1) vanishes at the other midpoints.
      for (int e = 0; e < 3; ++e) values[e] = 1.0 - 2.0 * l[(e + 2) % 3];
      return;
  }
  throw std::invalid_argument("ReferenceElement::eval: unknown family");
}

void ReferenceElement::grad(const std::array<double, 3>& l,
                            Vec2* grads) const {
  switch (family) {
    case Family::P0:
      grads[0] = {0.0, 0.0};
      return;
    case Family::P1:
      for (int i = 0; i < 3; ++i) grads[i] = kBaryGrad[i];
      return;
    case Family::P2:
      for (int i = 0; i < 3; ++i)
        grads[i] = (4.0 * l[i] - 1.0) * kBaryGrad[i];
      for (int e = 0; e < 3; ++e) {
        const int i = e, j = (e + 1) % 3;
        grads[3 + e] = 4.0 * (l[j] * kBaryGrad[i] + l[i] * kBaryGrad[j]);
      }
      return;
    case Family::P1Bubble:
      for (int i = 0; i < 3; ++i) grads[i] = kBaryGrad[i];
      grads[3] = 27.0 * (l[1] * l[2] * kBaryGrad[0] +
                         l[0] * l[2] * kBaryGrad[1] +
                         l[0] * l[1] * kBaryGrad[2]);
      return;
    case Family::P1NC:
      for (int e = 0; e < 3; ++e) grads[e] = -2.0 * kBaryGrad[(e + 2) % 3];
      return;
  }
  throw std::invalid_argument("ReferenceElement::grad: unknown family");
}

ReferenceElement reference_element(Family family) {
  switch (family) {
    case Family::P0:
      return {family, 1};
    case Family::P1:
      return {family, 3};
    case Family::P2:
      return {family, 6};
    case Family::P1Bubble:
      return {family, 4};
    case Family::P1NC:
      return {family, 3};
  }
  throw std::invalid_argument("reference_element: unknown family");
}

namespace {

// Gauss-Legendre nodes/weights on [0,1] by Newton iteration on P_m.
void gauss_legendre_01(int m, std::vector<double>& nodes,
                       std::vector<double>& weights) {
  nodes.resize(m);
  weights.resize(m);
  for (int i = 0; i < m; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (m + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      // Legendre recurrence for P_m(x) and P_m'(x).
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= m; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = m * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = 0.5 * (1.0 + x);
    weights[i] = 1.0 / ((1.0 - x * x) * dp * dp);
  }
}

}  // namespace

QuadratureRule quadrature(int degree) {
  if (degree < 1 || degree > 10)
    throw std::invalid_argument("quadrature: degree must be in 1..10");

  // Collapsed tensor rule: x = xi, y = eta*(1-xi), Jacobian (1-xi).
  // The xi-integrand has degree `degree`+1, so m Gauss points with
  // 2m-1 >= degree+1 are exact in both directions.
  const int m = (degree + 3) / 2;
  std::vector<double> nodes, weights;
  gauss_legendre_01(m, nodes, weights);

  QuadratureRule rule;
  rule.degree = degree;
  rule.points.reserve(m * m);
  rule.weights.reserve(m * m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      const double x = nodes[i];
      const double y = nodes[j] * (1.0 - nodes[i]);
      rule.points.push_back({1.0 - x - y, x, y});
      rule.weights.push_back(weights[i] * weights[j] * (1.0 - nodes[i]));
    }
  }
  return rule;
}

}  // namespace prfem
