// Copyright (c) 2026 The prfem authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>

namespace prfem {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::sqrt(dot(a, a)); }

/// 2x2 tensor with entries a(i,j) = d u_i / d x_j.
struct Mat2 {
  double xx = 0.0, xy = 0.0;
  double yx = 0.0, yy = 0.0;
};

inline Mat2 operator-(Mat2 a, Mat2 b) {
  return {a.xx - b.xx, a.xy - b.xy, a.yx - b.yx, a.yy - b.yy};
}
inline double frobenius2(Mat2 a) {
  return a.xx * a.xx + a.xy * a.xy + a.yx * a.yx + a.yy * a.yy;
}

}  // namespace prfem
