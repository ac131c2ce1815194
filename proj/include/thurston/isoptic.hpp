// SPDX-License-Identifier: Apache-2.0
//
// Angle subtended by a segment at a point, computed two ways:
//   * directly, by pulling the point back to E0 and measuring the angle
//     between the tangents of the translation curves to both endpoints;
//   * in closed form, from the base triangle on the unit surface (sides d1,
//     d2, angle gamma) and the fibre logarithms of the three points.
// The zero set of cos(alpha) - cos(angle) is the alpha-isoptic surface.
#pragma once

#include <cmath>
#include <numbers>
#include <string>

#include "thurston/curves.hpp"
#include "thurston/error.hpp"
#include "thurston/geometry.hpp"
#include "thurston/isometry.hpp"

namespace thurston {

/// Segment from E0 to a2 and a target angle alpha in (0, pi).
struct IsopticProblem {
  GeometryKind geometry = GeometryKind::SphericalProduct;
  ModelPoint a2{};
  double alpha = std::numbers::pi / 2;

  IsopticProblem() = default;
  IsopticProblem(GeometryKind g, ModelPoint second, double angle)
      : geometry(g), a2(second), alpha(angle) {
    require_valid(a2, g);
    if (a2 == kOrigin) throw Error(ErrorCode::DegenerateSegment, "segment endpoints coincide");
    if (!(alpha > 0.0 && alpha < std::numbers::pi)) {
      throw Error(ErrorCode::InvalidConfig, "alpha must lie in (0, pi)");
    }
  }
};

struct AngleResult {
  double angle = 0;
  double cos_direct = 0;
  double cos_closed_form = 0;
};

inline constexpr double kDegenerateTolerance = 1e-12;

/// Base distance between unit-surface points in cancellation-free form:
/// atan2(|u x v|, u.v) on S2, 2 asinh(chord / 2) on H2.
inline double stable_base_distance(const ModelPoint& u, const ModelPoint& v, GeometryKind g) {
  if (g == GeometryKind::SphericalProduct) {
    return std::atan2(norm(cross(u.vec(), v.vec())), dot(u.vec(), v.vec()));
  }
  const Vec3 w = u.vec() - v.vec();
  const double chord2 = std::max(w.y * w.y + w.z * w.z - w.x * w.x, 0.0);
  return 2.0 * std::asinh(0.5 * std::sqrt(chord2));
}

/// Ingredients of the closed form at vertex p: base sides d1 = |P'A1'|,
/// d2 = |P'A2'|, base segment d0 = |A1'A2'|, and fibre logarithms
/// ln(|a_i| / |p|).
struct VertexData {
  ModelPoint p_unit;
  ModelPoint a2_unit;
  double d0 = 0, d1 = 0, d2 = 0;
  double log1 = 0, log2 = 0;

  /// Geodesic distances from p to the two endpoints.
  double dist1() const { return std::hypot(log1, d1); }
  double dist2() const { return std::hypot(log2, d2); }
};

inline VertexData vertex_data(const IsopticProblem& prob, const ModelPoint& p) {
  const GeometryKind g = prob.geometry;
  VertexData v;
  const double np = fibre_norm(p, g);
  const double na2 = fibre_norm(prob.a2, g);
  v.p_unit = unit_project(p, g);
  v.a2_unit = unit_project(prob.a2, g);
  v.d1 = base_offset(p, g);
  v.d2 = stable_base_distance(v.p_unit, v.a2_unit, g);
  v.d0 = base_offset(prob.a2, g);
  v.log1 = -std::log(np);
  v.log2 = std::log(na2) - std::log(np);
  return v;
}

/// Interior angle gamma at P' of the base triangle A1'A2'P'. Collapsed
/// configurations (a zero side) make gamma irrelevant or zero and are
/// resolved here rather than rejected.
inline double base_gamma(const VertexData& v, GeometryKind g) {
  const double pi = std::numbers::pi;
  if (g == GeometryKind::SphericalProduct &&
      (pi - v.d1 < kDegenerateTolerance || pi - v.d2 < kDegenerateTolerance)) {
    throw Error(ErrorCode::DegenerateProjection, "vertex projection antipodal to an endpoint");
  }
  if (v.d0 < kDegenerateTolerance || v.d1 < kDegenerateTolerance ||
      v.d2 < kDegenerateTolerance) {
    return 0.0;
  }
  return base_angle_at(v.p_unit, kOrigin, v.a2_unit, g);
}

namespace detail {

inline void require_vertex(const IsopticProblem& prob, const ModelPoint& p) {
  require_valid(p, prob.geometry);
  if (p == kOrigin || p == prob.a2) {
    throw Error(ErrorCode::DegenerateVertex, "vertex coincides with a segment endpoint");
  }
}

struct TangentPair {
  TangentVector t1, t2;
};

inline TangentPair closed_form_tangents(const IsopticProblem& prob, const ModelPoint& p) {
  require_vertex(prob, p);
  const VertexData v = vertex_data(prob, p);
  const double gamma = base_gamma(v, prob.geometry);
  TangentPair t{{v.log1, v.d1, 0.0}, {v.log2, v.d2 * std::cos(gamma), v.d2 * std::sin(gamma)}};
  if (norm(t.t1) < kDegenerateTolerance || norm(t.t2) < kDegenerateTolerance) {
    throw Error(ErrorCode::DegenerateVertex, "vertex at a segment endpoint");
  }
  return t;
}

inline TangentPair direct_tangents(const IsopticProblem& prob, const ModelPoint& p) {
  require_vertex(prob, p);
  const GeometryKind g = prob.geometry;
  const Isometry4 m = pullback_matrix(p, g);
  TangentPair t;
  try {
    t.t1 = tangent_to(apply(m, kOrigin, g), g);
    t.t2 = tangent_to(apply(m, prob.a2, g), g);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ZeroVector) throw Error(ErrorCode::DegenerateVertex, e.what());
    throw;
  }
  if (norm(t.t1) < kDegenerateTolerance || norm(t.t2) < kDegenerateTolerance) {
    throw Error(ErrorCode::DegenerateVertex, "vertex at a segment endpoint");
  }
  return t;
}

inline double cosine(const TangentPair& t) {
  return dot(t.t1, t.t2) / (norm(t.t1) * norm(t.t2));
}

}  // namespace detail

/// Pull p back to E0 and measure the angle between the tangents of the
/// translation curves to the images of both endpoints.
inline double angle_direct(const IsopticProblem& prob, const ModelPoint& p) {
  const auto t = detail::direct_tangents(prob, p);
  return angle_between(t.t1, t.t2);
}

/// Closed form: the cosine of the angle is
///   (d1 d2 cos(gamma) + L1 L2) / sqrt((L1^2 + d1^2)(L2^2 + d2^2)),
/// evaluated as the angle between (L1, d1, 0) and (L2, d2 cos g, d2 sin g).
inline double angle_closed_form(const IsopticProblem& prob, const ModelPoint& p) {
  const auto t = detail::closed_form_tangents(prob, p);
  return angle_between(t.t1, t.t2);
}

inline AngleResult evaluate_angle(const IsopticProblem& prob, const ModelPoint& p) {
  const auto closed = detail::closed_form_tangents(prob, p);
  const auto direct = detail::direct_tangents(prob, p);
  return {angle_between(closed.t1, closed.t2), detail::cosine(direct), detail::cosine(closed)};
}

/// cos(alpha) - cos(angle at p); positive where the segment subtends more
/// than alpha.
inline double isoptic_residual(const IsopticProblem& prob, const ModelPoint& p) {
  return std::cos(prob.alpha) - detail::cosine(detail::closed_form_tangents(prob, p));
}

enum class SurfaceSelector { Alpha, Supplement, Union };

inline const char* to_string(SurfaceSelector s) {
  switch (s) {
    case SurfaceSelector::Alpha: return "alpha";
    case SurfaceSelector::Supplement: return "supplement";
    case SurfaceSelector::Union: return "union";
  }
  return "alpha";
}

/// Residual whose zero set is the alpha-, the (pi - alpha)-surface, or both.
inline double selected_residual(double cos_angle, double alpha, SurfaceSelector sel) {
  const double ca = std::cos(alpha);
  switch (sel) {
    case SurfaceSelector::Alpha: return ca - cos_angle;
    case SurfaceSelector::Supplement: return -ca - cos_angle;
    case SurfaceSelector::Union: return ca * ca - cos_angle * cos_angle;
  }
  return ca - cos_angle;
}

/// Orthoptic surface of the fibre segment from E0 to (1, a, 0, 0): the
/// sphere about the segment midpoint (1, sqrt(a), 0, 0) of radius |ln sqrt(a)|.
inline SphereSpec thaloid_sphere(double a, GeometryKind g) {
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw Error(ErrorCode::InvalidPoint, "thaloid parameter must be positive");
  }
  if (std::abs(a - 1.0) < kDegenerateTolerance) {
    throw Error(ErrorCode::DegenerateSegment, "a = 1 gives a zero-length segment");
  }
  (void)g;
  return {{std::sqrt(a), 0.0, 0.0}, std::abs(0.5 * std::log(a))};
}

/// A segment moved so that its first endpoint sits at E0.
struct NormalizedSegment {
  Isometry4 to_normal;    ///< pullback of the first endpoint
  Isometry4 from_normal;  ///< its inverse, for mapping results back
  IsopticProblem problem;
};

inline NormalizedSegment normalize_segment(const ModelPoint& p1, const ModelPoint& p2,
                                           GeometryKind g,
                                           double alpha = std::numbers::pi / 2) {
  require_valid(p1, g);
  require_valid(p2, g);
  if (p1 == p2) throw Error(ErrorCode::DegenerateSegment, "segment endpoints coincide");
  NormalizedSegment s;
  s.to_normal = pullback_matrix(p1, g);
  s.from_normal = s.to_normal.inverse();
  s.problem = IsopticProblem(g, apply(s.to_normal, p2, g), alpha);
  return s;
}

/// Angle subtended at p by the segment from a1 to a2.
inline double subtended_angle(const ModelPoint& a1, const ModelPoint& a2, const ModelPoint& p,
                              GeometryKind g) {
  const NormalizedSegment s = normalize_segment(a1, a2, g);
  return angle_closed_form(s.problem, apply(s.to_normal, p, g));
}

}  // namespace thurston
