// SPDX-License-Identifier: Apache-2.0
//
// The transformation pipeline that pulls an arbitrary point back to the
// origin: a fibre translation onto the unit surface, a rotation about the
// x axis into the plane z = 0, a base rotation (S2) or boost (H2) onto E0,
// and the inverse x-axis rotation that restores the translation-curve plane.
#pragma once

#include <array>
#include <cmath>
#include <utility>

#include "thurston/error.hpp"
#include "thurston/geometry.hpp"

namespace thurston {

/// 4x4 matrix acting on homogeneous row coordinates (1, x, y, z) from the
/// right: image = row * m.
struct Isometry4 {
  std::array<std::array<double, 4>, 4> m{};

  static Isometry4 identity() {
    Isometry4 r;
    for (int i = 0; i < 4; ++i) r.m[i][i] = 1.0;
    return r;
  }

  double operator()(int row, int col) const { return m[row][col]; }

  /// Row-vector composition: (a * b) applies a first, then b.
  friend Isometry4 operator*(const Isometry4& a, const Isometry4& b) {
    Isometry4 r;
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        double s = 0;
        for (int k = 0; k < 4; ++k) s += a.m[i][k] * b.m[k][j];
        r.m[i][j] = s;
      }
    }
    return r;
  }

  Isometry4 transposed() const {
    Isometry4 r;
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) r.m[i][j] = m[j][i];
    }
    return r;
  }

  /// Gauss-Jordan inverse with partial pivoting.
  Isometry4 inverse() const {
    auto a = m;
    auto inv = identity().m;
    for (int col = 0; col < 4; ++col) {
      int pivot = col;
      for (int r = col + 1; r < 4; ++r) {
        if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
      }
      if (a[pivot][col] == 0.0) {
        throw Error(ErrorCode::IsometryDomainError, "singular transformation matrix");
      }
      std::swap(a[col], a[pivot]);
      std::swap(inv[col], inv[pivot]);
      const double d = a[col][col];
      for (int j = 0; j < 4; ++j) {
        a[col][j] /= d;
        inv[col][j] /= d;
      }
      for (int r = 0; r < 4; ++r) {
        if (r == col) continue;
        const double f = a[r][col];
        if (f == 0.0) continue;
        for (int j = 0; j < 4; ++j) {
          a[r][j] -= f * a[col][j];
          inv[r][j] -= f * inv[col][j];
        }
      }
    }
    Isometry4 r;
    r.m = inv;
    return r;
  }
};

/// Matrix action followed by renormalization to x0 = 1. The image is
/// checked against the domain of g; a failure there indicates a bug.
inline ModelPoint apply(const Isometry4& iso, const ModelPoint& p, GeometryKind g) {
  const std::array<double, 4> row{1.0, p.x, p.y, p.z};
  std::array<double, 4> out{};
  for (int j = 0; j < 4; ++j) {
    double s = 0;
    for (int k = 0; k < 4; ++k) s += row[k] * iso.m[k][j];
    out[j] = s;
  }
  if (out[0] == 0.0 || !std::isfinite(out[0])) {
    throw Error(ErrorCode::IsometryDomainError, "image is a point at infinity");
  }
  ModelPoint q = out[0] == 1.0 ? ModelPoint{out[1], out[2], out[3]}
                               : ModelPoint::homogeneous(out[0], out[1], out[2], out[3]);
  if (!is_valid(q, g)) {
    throw Error(ErrorCode::IsometryDomainError,
                "image " + describe(q) + " left the domain: " + domain_violation(q, g));
  }
  return q;
}

/// Central similarity onto the unit surface: diag{1, 1/N, 1/N, 1/N}.
inline Isometry4 fibre_translation(const ModelPoint& p, GeometryKind g) {
  const double s = 1.0 / fibre_norm(p, g);
  Isometry4 r = Isometry4::identity();
  r.m[1][1] = r.m[2][2] = r.m[3][3] = s;
  return r;
}

/// Rotation about the x axis taking (y, z) of p onto the positive y axis.
/// For p on the x axis the rotation angle is taken to be zero.
inline Isometry4 rotation_x(const ModelPoint& p) {
  Isometry4 r = Isometry4::identity();
  const double rho = p.base_radius();
  if (rho == 0.0) return r;
  const double c = p.y / rho, s = p.z / rho;
  r.m[2][2] = c;
  r.m[2][3] = -s;
  r.m[3][2] = s;
  r.m[3][3] = c;
  return r;
}

/// Base rotation (S2) or boost (H2) in the (x, y) plane taking the image of p
/// under fibre_translation and rotation_x to E0.
inline Isometry4 rotation_z(const ModelPoint& p, GeometryKind g) {
  const double n = fibre_norm(p, g);
  const double c = p.x / n, s = p.base_radius() / n;
  Isometry4 r = Isometry4::identity();
  r.m[1][1] = c;
  r.m[1][2] = -s;
  r.m[2][1] = sigma(g) * s;
  r.m[2][2] = c;
  return r;
}

/// Composite isometry mapping p to E0 while keeping the plane of the
/// translation curve from E0 to p fixed.
inline Isometry4 pullback_matrix(const ModelPoint& p, GeometryKind g) {
  const Isometry4 t = fibre_translation(p, g);
  if (p.base_radius() == 0.0) return t;
  const Isometry4 rx = rotation_x(p);
  return t * rx * rotation_z(p, g) * rx.transposed();
}

/// Model-Euclidean rotation by angle about the x axis; an isometry of both
/// geometries.
inline Isometry4 axial_rotation(double angle) {
  Isometry4 r = Isometry4::identity();
  const double c = std::cos(angle), s = std::sin(angle);
  r.m[2][2] = c;
  r.m[2][3] = s;
  r.m[3][2] = -s;
  r.m[3][3] = c;
  return r;
}

}  // namespace thurston
