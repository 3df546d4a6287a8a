// Copyright (c) 2026 The prfem authors
// SPDX-License-Identifier: Apache-2.0

#include "prfem/mesh.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>

namespace prfem {

double Mesh::triangle_area(int k) const {
  const Triangle& t = triangles[k];
  const Vec2 a = vertices[t.v[0]];
  const Vec2 b = vertices[t.v[1]];
  const Vec2 c = vertices[t.v[2]];
  return 0.5 * cross(b - a, c - a);
}

Vec2 Mesh::barycenter(int k) const {
  const Triangle& t = triangles[k];
  return (1.0 / 3.0) *
         (vertices[t.v[0]] + vertices[t.v[1]] + vertices[t.v[2]]);
}

namespace {

uint64_t edge_key(int a, int b) {
  if (a > b) std::swap(a, b);
  return (static_cast<uint64_t>(a) << 32) | static_cast<uint64_t>(b);
}

}  // namespace

Mesh make_mesh(std::vector<Vec2> vertices, std::vector<Triangle> triangles) {
  Mesh mesh;
  mesh.vertices = std::move(vertices);
  mesh.triangles = std::move(triangles);

  std::unordered_map<uint64_t, int> edge_ids;
  std::vector<int> edge_use;
  mesh.triangle_edges.resize(mesh.triangles.size());

  for (int k = 0; k < mesh.n_triangles(); ++k) {
    if (mesh.triangle_area(k) <= 0.0)
      throw std::invalid_argument("make_mesh: non-positive triangle area");
    const Triangle& t = mesh.triangles[k];
    for (int e = 0; e < 3; ++e) {
      const int a = t.v[e];
      const int b = t.v[(e + 1) % 3];
      auto [it, inserted] = edge_ids.try_emplace(edge_key(a, b), mesh.n_edges());
      if (inserted) {
        mesh.edges.push_back(
            {a, b, 0.5 * (mesh.vertices[a] + mesh.vertices[b])});
        edge_use.push_back(0);
      }
      mesh.triangle_edges[k][e] = it->second;
      ++edge_use[it->second];
    }
  }

  mesh.boundary_edge.resize(mesh.n_edges());
  mesh.boundary_vertex.assign(mesh.n_vertices(), false);
  for (int e = 0; e < mesh.n_edges(); ++e) {
    if (edge_use[e] < 1 || edge_use[e] > 2)
      throw std::invalid_argument("make_mesh: edge shared by more than 2 triangles");
    mesh.boundary_edge[e] = (edge_use[e] == 1);
    if (mesh.boundary_edge[e]) {
      mesh.boundary_vertex[mesh.edges[e].a] = true;
      mesh.boundary_vertex[mesh.edges[e].b] = true;
    }
  }

  mesh.h = 0.0;
  for (const Edge& e : mesh.edges)
    mesh.h = std::max(mesh.h, norm(mesh.vertices[e.a] - mesh.vertices[e.b]));
  return mesh;
}

Mesh build_uniform_mesh(int n) {
  if (n < 1) throw std::invalid_argument("build_uniform_mesh: n must be >= 1");

  std::vector<Vec2> vertices;
  vertices.reserve(static_cast<size_t>(n + 1) * (n + 1));
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i)
      vertices.push_back({static_cast<double>(i) / n, static_cast<double>(j) / n});

  auto vid = [n](int i, int j) { return j * (n + 1) + i; };

  std::vector<Triangle> triangles;
  triangles.reserve(static_cast<size_t>(2) * n * n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const int a = vid(i, j);
      const int b = vid(i + 1, j);
      const int c = vid(i + 1, j + 1);
      const int d = vid(i, j + 1);
      triangles.push_back({{a, b, c}});
      triangles.push_back({{a, c, d}});
    }
  }
  return make_mesh(std::move(vertices), std::move(triangles));
}

Mesh alfeld_split(const Mesh& mesh) {
  std::vector<Vec2> vertices = mesh.vertices;
  std::vector<Triangle> triangles;
  triangles.reserve(3 * mesh.triangles.size());
  for (int k = 0; k < mesh.n_triangles(); ++k) {
    const int m = static_cast<int>(vertices.size());
    vertices.push_back(mesh.barycenter(k));
    const auto& v = mesh.triangles[k].v;
    triangles.push_back({{v[0], v[1], m}});
    triangles.push_back({{v[1], v[2], m}});
    triangles.push_back({{v[2], v[0], m}});
  }
  return make_mesh(std::move(vertices), std::move(triangles));
}

PointLocation locate_point(const Mesh& mesh, Vec2 p) {
  constexpr double tol = 1e-12;
  if (p.x < -tol || p.x > 1.0 + tol || p.y < -tol || p.y > 1.0 + tol)
    throw std::domain_error("locate_point: point outside the unit square");

  for (int k = 0; k < mesh.n_triangles(); ++k) {
    const Triangle& t = mesh.triangles[k];
    const Vec2 a = mesh.vertices[t.v[0]];
    const Vec2 b = mesh.vertices[t.v[1]];
    const Vec2 c = mesh.vertices[t.v[2]];
    const double area2 = cross(b - a, c - a);
    std::array<double, 3> bary = {cross(b - p, c - p) / area2,
                                  cross(c - p, a - p) / area2,
                                  cross(a - p, b - p) / area2};
    if (bary[0] >= -tol && bary[1] >= -tol && bary[2] >= -tol) {
      double sum = 0.0;
      for (double& l : bary) {
        l = std::max(l, 0.0);
        sum += l;
      }
      for (double& l : bary) l /= sum;
      return {k, bary};
    }
  }
  throw std::runtime_error("locate_point: no containing triangle found");
}

}  // namespace prfem
