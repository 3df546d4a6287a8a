// Copyright (c) 2026 The prfem authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <vector>

#include "prfem/geometry.hpp"

namespace prfem {

/// Scalar shape-function families on the reference triangle
/// (0,0)-(1,0)-(0,1). Barycentric coordinates are ordered
/// (1-x-y, x, y), one per vertex.
enum class Family {
  P0,        // cell constant
  P1,        // vertex hats
  P2,        // vertices + edge midpoints
  P1Bubble,  // vertex hats + cubic bubble (27*l0*l1*l2)
  P1NC,      // Crouzeix-Raviart: edge-midpoint nodes
};

/// Shape values and reference-coordinate gradients for one family.
///
/// Local DOF order: vertices 0..2, then edges 0..2 (P2), the bubble
/// (P1Bubble), or edges 0..2 alone (P1NC). Edge k joins vertices
/// (k, (k+1) % 3), matching Mesh::triangle_edges.
struct ReferenceElement {
  Family family = Family::P1;
  int dofs_per_cell = 0;

  void eval(const std::array<double, 3>& bary, double* values) const;
  void grad(const std::array<double, 3>& bary, Vec2* grads) const;
};

ReferenceElement reference_element(Family family);

/// Positive-weight rule on the reference triangle; weights sum to 1/2.
struct QuadratureRule {
  std::vector<std::array<double, 3>> points;  // barycentric
  std::vector<double> weights;
  int degree = 0;  // polynomial exactness
};

/// Conical-product Gauss rule exact for polynomials up to `degree`,
/// degree in 1..10.
QuadratureRule quadrature(int degree);

}  // namespace prfem
