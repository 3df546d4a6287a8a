// Copyright (c) 2026 The prfem authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <vector>

#include "prfem/geometry.hpp"

namespace prfem {

/// Vertex-index triple, counterclockwise orientation.
struct Triangle {
  std::array<int, 3> v;
};

/// Undirected edge between two vertices, with cached midpoint.
struct Edge {
  int a = -1;
  int b = -1;
  Vec2 midpoint;
};

/// Triangulation of the unit square with edge and boundary topology.
///
/// Local edge k of a triangle connects vertices (k, (k+1) % 3); the map to
/// global edge indices is in `triangle_edges`. Immutable after construction.
struct Mesh {
  std::vector<Vec2> vertices;
  std::vector<Triangle> triangles;
  std::vector<Edge> edges;
  std::vector<std::array<int, 3>> triangle_edges;
  std::vector<bool> boundary_edge;
  std::vector<bool> boundary_vertex;
  double h = 0.0;  // max triangle diameter

  int n_vertices() const { return static_cast<int>(vertices.size()); }
  int n_triangles() const { return static_cast<int>(triangles.size()); }
  int n_edges() const { return static_cast<int>(edges.size()); }

  double triangle_area(int k) const;
  Vec2 barycenter(int k) const;
};

/// Builds a mesh from raw vertices and triangles: deduplicates edges,
/// marks the boundary, and records the mesh size. Triangles must be
/// positively oriented.
Mesh make_mesh(std::vector<Vec2> vertices, std::vector<Triangle> triangles);

/// n x n grid of squares on (0,1)^2, each split by the lower-left to
/// upper-right diagonal.
Mesh build_uniform_mesh(int n);

/// Replaces every triangle by the three triangles joining its edges to its
/// barycenter.
Mesh alfeld_split(const Mesh& mesh);

struct PointLocation {
  int triangle = -1;
  std::array<double, 3> bary{};
};

/// Finds the triangle containing `p` and its barycentric coordinates.
/// Points on shared edges resolve to the lowest triangle index; points
/// outside [0,1]^2 throw std::domain_error.
PointLocation locate_point(const Mesh& mesh, Vec2 p);

}  // namespace prfem
