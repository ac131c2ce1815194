// SPDX-License-Identifier: Apache-2.0
//
// Translation curves issued from E0, their tangents, arc-length distance,
// geodesic spheres, and a quadrature oracle for arc length.
#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "thurston/error.hpp"
#include "thurston/geometry.hpp"
#include "thurston/isometry.hpp"

namespace thurston {

/// Direction (u, v) at the origin and arc length tau along the curve.
struct CurveParams {
  double u = 0;    ///< angle from the y axis in the tangent plane, (-pi, pi]
  double v = 0;    ///< elevation above the tangent plane, [-pi/2, pi/2]
  double tau = 0;  ///< arc length, >= 0
};

inline void require_valid(const CurveParams& c) {
  const double pi = std::numbers::pi;
  if (!(c.u > -pi && c.u <= pi) || !(c.v >= -pi / 2 && c.v <= pi / 2) || !(c.tau >= 0.0) ||
      !std::isfinite(c.tau)) {
    throw Error(ErrorCode::InvalidChart, "curve parameters out of range");
  }
}

inline ModelPoint translation_curve(const CurveParams& c, GeometryKind g) {
  require_valid(c);
  const double lift = std::exp(c.tau * std::sin(c.v));
  const double base = c.tau * std::cos(c.v);
  const double s = lift * S(g, base);
  return {lift * C(g, base), s * std::cos(c.u), s * std::sin(c.u)};
}

/// d/dtau of translation_curve in model coordinates.
inline Vec3 translation_curve_velocity(const CurveParams& c, GeometryKind g) {
  const double sv = std::sin(c.v), cv = std::cos(c.v);
  const double lift = std::exp(c.tau * sv);
  const double base = c.tau * cv;
  const double dx = lift * (sv * C(g, base) + cv * C_prime(g, base));
  const double ds = lift * (sv * S(g, base) + cv * C(g, base));  // S' == C in both
  return {dx, ds * std::cos(c.u), ds * std::sin(c.u)};
}

/// sin(u) y - cos(u) z; vanishes on every curve with direction angle u.
inline double curve_plane_residual(const ModelPoint& p, double u) {
  return std::sin(u) * p.y - std::cos(u) * p.z;
}

/// Base distance from the unit-surface projection of p to (1, 0, 0), in the
/// cancellation-free forms atan2(rho, x) and asinh(rho / N).
inline double base_offset(const ModelPoint& p, GeometryKind g) {
  const double rho = p.base_radius();
  if (g == GeometryKind::SphericalProduct) return std::atan2(rho, p.x);
  return std::asinh(rho / fibre_norm(p, g));
}

/// tau * t for the translation curve from E0 to p.
inline TangentVector tangent_to(const ModelPoint& p, GeometryKind g) {
  const double n = fibre_norm(p, g);
  if (p == kOrigin) throw Error(ErrorCode::ZeroVector, "tangent requested at the origin itself");
  const double rho = p.base_radius();
  const double lift = std::log(n);
  if (rho == 0.0) {
    if (p.x < 0.0) {
      throw Error(ErrorCode::DegenerateProjection,
                  "base projection antipodal to the origin; direction undefined");
    }
    return {lift, 0.0, 0.0};
  }
  const double a = base_offset(p, g);
  return {lift, p.y / rho * a, p.z / rho * a};
}

inline double distance_from_origin(const ModelPoint& p, GeometryKind g) {
  const double lift = std::log(fibre_norm(p, g));
  return std::hypot(lift, base_offset(p, g));
}

inline double distance(const ModelPoint& p1, const ModelPoint& p2, GeometryKind g) {
  require_valid(p1, g);
  require_valid(p2, g);
  if (p1 == p2) return 0.0;
  return distance_from_origin(apply(pullback_matrix(p1, g), p2, g), g);
}

/// Left side minus right side of the implicit equation of the sphere of
/// radius r about E0: ln^2(N) + arcC^2(x / N) - r^2.
inline double origin_sphere_residual(const ModelPoint& p, double radius, GeometryKind g) {
  const double d = distance_from_origin(p, g);
  return d * d - radius * radius;
}

struct SphereSpec {
  ModelPoint center = kOrigin;
  double radius = 1;
};

/// Point of the sphere with longitude u and altitude v.
inline ModelPoint sphere_point(const SphereSpec& spec, GeometryKind g, double u, double v) {
  if (!(spec.radius > 0.0)) throw Error(ErrorCode::InvalidChart, "sphere radius must be positive");
  const ModelPoint local = translation_curve({u, v, spec.radius}, g);
  if (spec.center == kOrigin) return local;
  return apply(pullback_matrix(spec.center, g).inverse(), local, g);
}

/// u_samples longitudes covering (-pi, pi] and v_samples altitudes from
/// -pi/2 to pi/2 inclusive.
inline std::vector<ModelPoint> sphere_points(const SphereSpec& spec, GeometryKind g,
                                             int u_samples, int v_samples) {
  if (!(spec.radius > 0.0)) throw Error(ErrorCode::InvalidChart, "sphere radius must be positive");
  if (u_samples < 1 || v_samples < 2) {
    throw Error(ErrorCode::InvalidChart, "need at least 1 longitude and 2 altitude samples");
  }
  const double pi = std::numbers::pi;
  const Isometry4 to_center = pullback_matrix(spec.center, g).inverse();
  std::vector<ModelPoint> out;
  out.reserve(static_cast<std::size_t>(u_samples) * v_samples);
  for (int j = 0; j < v_samples; ++j) {
    const double v = -pi / 2 + pi * j / (v_samples - 1);
    for (int i = 0; i < u_samples; ++i) {
      const double u = -pi + 2 * pi * (i + 1) / u_samples;
      out.push_back(apply(to_center, translation_curve({u, v, spec.radius}, g), g));
    }
  }
  return out;
}

/// Arc length of translation_curve over [0, tau] from the model metric,
/// integrated panel by panel with adaptive Gauss-Kronrod. Independent of the
/// closed-form distance; used to certify it.
inline double oracle_arc_length(const CurveParams& c, GeometryKind g, int steps = 100) {
  require_valid(c);
  if (steps < 100) throw Error(ErrorCode::InvalidChart, "oracle needs at least 100 panels");
  if (c.tau == 0.0) return 0.0;
  auto speed = [&](double s) {
    const CurveParams at{c.u, c.v, s};
    const ModelPoint p = translation_curve(at, g);
    return std::sqrt(metric_norm_squared(metric_at(p, g), translation_curve_velocity(at, g)));
  };
  using Quadrature = boost::math::quadrature::gauss_kronrod<double, 15>;
  double total = 0;
  const double h = c.tau / steps;
  for (int k = 0; k < steps; ++k) {
    const double a = h * k;
    const double b = k + 1 == steps ? c.tau : h * (k + 1);
    total += Quadrature::integrate(speed, a, b, 5, 1e-12);
  }
  return total;
}

}  // namespace thurston
