// SPDX-License-Identifier: Apache-2.0
//
// Geometry kernel for the projective models of S2xR and H2xR: point domains,
// the fibre norm, coordinate charts, the model metric, and trigonometry of the
// base surface (unit sphere or unit hyperboloid sheet).
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>

#include "thurston/error.hpp"

namespace thurston {

enum class GeometryKind { SphericalProduct, HyperbolicProduct };

inline const char* to_string(GeometryKind g) {
  return g == GeometryKind::SphericalProduct ? "s2xr" : "h2xr";
}

/// +1 for S2xR, -1 for H2xR.
constexpr double sigma(GeometryKind g) {
  return g == GeometryKind::SphericalProduct ? 1.0 : -1.0;
}

/// sin or sinh
inline double S(GeometryKind g, double t) {
  return g == GeometryKind::SphericalProduct ? std::sin(t) : std::sinh(t);
}

/// cos or cosh
inline double C(GeometryKind g, double t) {
  return g == GeometryKind::SphericalProduct ? std::cos(t) : std::cosh(t);
}

/// Derivative of C: -sin or sinh.
inline double C_prime(GeometryKind g, double t) {
  return g == GeometryKind::SphericalProduct ? -std::sin(t) : std::sinh(t);
}

/// Arguments of arccos/arccosh within this distance of the legal domain are
/// clamped; anything further out is reported as a numeric-domain error.
inline constexpr double kClampTolerance = 1e-9;

/// arccos or arccosh with the clamping policy above.
inline double arcC(GeometryKind g, double c) {
  if (!std::isfinite(c)) {
    throw Error(ErrorCode::NumericDomain, "non-finite argument to arcC");
  }
  if (g == GeometryKind::SphericalProduct) {
    if (c > 1.0 + kClampTolerance || c < -1.0 - kClampTolerance) {
      throw Error(ErrorCode::NumericDomain, "arccos argument " + std::to_string(c));
    }
    return std::acos(std::clamp(c, -1.0, 1.0));
  }
  if (c < 1.0 - kClampTolerance) {
    throw Error(ErrorCode::NumericDomain, "arccosh argument " + std::to_string(c));
  }
  return std::acosh(std::max(c, 1.0));
}

struct Vec3 {
  double x = 0, y = 0, z = 0;

  friend Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
  friend Vec3 operator*(Vec3 a, double s) { return s * a; }
  friend bool operator==(const Vec3&, const Vec3&) = default;
};

inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(Vec3 a, Vec3 b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(Vec3 a) { return std::sqrt(dot(a, a)); }

/// Angle between two vectors, accurate near 0 and pi.
inline double angle_between(Vec3 a, Vec3 b) {
  return std::atan2(norm(cross(a, b)), dot(a, b));
}

/// Tangent vector at the origin E0 in (t, base, base) components; the metric
/// there is the standard dot product.
using TangentVector = Vec3;

/// Point (1, x, y, z) of the affine model. Homogeneous inputs are divided
/// through once on construction so that x0 == 1 always holds.
struct ModelPoint {
  double x = 1, y = 0, z = 0;

  static ModelPoint homogeneous(double x0, double x1, double x2, double x3) {
    if (x0 == 0.0 || !std::isfinite(x0)) {
      throw Error(ErrorCode::InvalidPoint, "homogeneous weight must be finite and nonzero");
    }
    return {x1 / x0, x2 / x0, x3 / x0};
  }
  static ModelPoint from(Vec3 v) { return {v.x, v.y, v.z}; }

  Vec3 vec() const { return {x, y, z}; }
  double base_radius() const { return std::hypot(y, z); }

  friend bool operator==(const ModelPoint&, const ModelPoint&) = default;
};

/// The origin E0 = (1, 1, 0, 0) of both models.
inline constexpr ModelPoint kOrigin{1.0, 0.0, 0.0};

inline std::string describe(const ModelPoint& p) {
  std::ostringstream os;
  os.precision(17);
  os << "(1, " << p.x << ", " << p.y << ", " << p.z << ")";
  return os.str();
}

/// Empty string when p lies in the domain of g, otherwise the violated
/// inequality.
inline std::string domain_violation(const ModelPoint& p, GeometryKind g) {
  if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z)) {
    return "coordinates must be finite";
  }
  if (g == GeometryKind::SphericalProduct) {
    if (!(p.x * p.x + p.y * p.y + p.z * p.z > 0.0)) return "x^2 + y^2 + z^2 > 0 violated";
    return {};
  }
  if (!(p.x > 0.0)) return "x > 0 violated";
  if (!(p.x > p.base_radius())) return "x^2 - y^2 - z^2 > 0 violated";
  return {};
}

inline bool is_valid(const ModelPoint& p, GeometryKind g) { return domain_violation(p, g).empty(); }

inline void require_valid(const ModelPoint& p, GeometryKind g) {
  if (auto why = domain_violation(p, g); !why.empty()) {
    throw Error(ErrorCode::InvalidPoint,
                describe(p) + " is not a point of " + to_string(g) + ": " + why);
  }
}

/// sqrt(x^2 +- (y^2 + z^2)), i.e. e^t for the fibre coordinate t.
inline double fibre_norm(const ModelPoint& p, GeometryKind g) {
  require_valid(p, g);
  if (g == GeometryKind::SphericalProduct) return std::sqrt(p.x * p.x + p.y * p.y + p.z * p.z);
  const double rho = p.base_radius();
  return std::sqrt((p.x - rho) * (p.x + rho));
}

/// Central projection along the fibre line onto the unit surface.
inline ModelPoint unit_project(const ModelPoint& p, GeometryKind g) {
  const double n = fibre_norm(p, g);
  // Points already on the surface up to rounding are returned unchanged, so
  // projecting twice gives exactly the same point.
  if (std::abs(n - 1.0) <= 16 * std::numeric_limits<double>::epsilon()) return p;
  return {p.x / n, p.y / n, p.z / n};
}

/// (t, theta, phi) on S2xR or (t, r, phi) on H2xR.
struct ChartCoords {
  double t = 0;
  double radial = 0;
  double phi = 0;
};

inline ModelPoint chart_to_model(const ChartCoords& c, GeometryKind g) {
  const double pi = std::numbers::pi;
  if (!std::isfinite(c.t) || !std::isfinite(c.radial) || !std::isfinite(c.phi)) {
    throw Error(ErrorCode::InvalidChart, "chart coordinates must be finite");
  }
  if (!(c.phi > -pi && c.phi <= pi)) {
    throw Error(ErrorCode::InvalidChart, "phi outside (-pi, pi]");
  }
  if (c.radial < 0.0 || (g == GeometryKind::SphericalProduct && c.radial > pi)) {
    throw Error(ErrorCode::InvalidChart, g == GeometryKind::SphericalProduct
                                             ? "theta outside [0, pi]"
                                             : "r must be nonnegative");
  }
  const double scale = std::exp(c.t);
  const double s = S(g, c.radial);
  return {scale * C(g, c.radial), scale * s * std::cos(c.phi), scale * s * std::sin(c.phi)};
}

inline ChartCoords model_to_chart(const ModelPoint& p, GeometryKind g) {
  const double n = fibre_norm(p, g);
  const double rho = p.base_radius();
  ChartCoords c;
  c.t = std::log(n);
  c.radial = g == GeometryKind::SphericalProduct ? std::atan2(rho, p.x) : std::asinh(rho / n);
  c.phi = rho == 0.0 ? 0.0 : std::atan2(p.z, p.y);
  if (c.phi == -std::numbers::pi) c.phi = std::numbers::pi;
  return c;
}

/// Symmetric 3x3 form acting on model-coordinate velocities (dx, dy, dz).
using MetricTensor = std::array<std::array<double, 3>, 3>;

inline MetricTensor metric_at(const ModelPoint& p, GeometryKind g) {
  require_valid(p, g);
  const double x = p.x, y = p.y, z = p.z;
  MetricTensor m{};
  if (g == GeometryKind::SphericalProduct) {
    const double w = 1.0 / (x * x + y * y + z * z);
    m[0][0] = m[1][1] = m[2][2] = w;
    return m;
  }
  const double q = fibre_norm(p, g);
  const double inv = 1.0 / (q * q * q * q);
  m[0][0] = (x * x + y * y + z * z) * inv;
  m[1][1] = (x * x + y * y - z * z) * inv;
  m[2][2] = (x * x - y * y + z * z) * inv;
  m[0][1] = m[1][0] = -2.0 * x * y * inv;
  m[0][2] = m[2][0] = -2.0 * x * z * inv;
  m[1][2] = m[2][1] = 2.0 * y * z * inv;
  return m;
}

/// Quadratic form v^T g v.
inline double metric_norm_squared(const MetricTensor& m, Vec3 v) {
  const std::array<double, 3> a{v.x, v.y, v.z};
  double s = 0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) s += a[i] * m[i][j] * a[j];
  }
  return s;
}

/// Euclidean (S2) or Minkowski (H2) product x x' +- (y y' + z z').
inline double base_product(const ModelPoint& u, const ModelPoint& v, GeometryKind g) {
  return u.x * v.x + sigma(g) * (u.y * v.y + u.z * v.z);
}

inline constexpr double kUnitSurfaceTolerance = 1e-9;

inline void require_on_unit_surface(const ModelPoint& p, GeometryKind g) {
  require_valid(p, g);
  if (std::abs(fibre_norm(p, g) - 1.0) > kUnitSurfaceTolerance) {
    throw Error(ErrorCode::NotOnUnitSurface, describe(p) + " is off the unit surface");
  }
}

/// Great-circle (S2) or hyperbolic (H2) distance between unit-surface points.
inline double base_distance(const ModelPoint& u, const ModelPoint& v, GeometryKind g) {
  require_on_unit_surface(u, g);
  require_on_unit_surface(v, g);
  if (u == v) return 0.0;
  return arcC(g, base_product(u, v, g));
}

/// Interior angle at p of the base triangle (p, a, b), from the law of
/// cosines for sides.
inline double base_angle_at(const ModelPoint& p, const ModelPoint& a, const ModelPoint& b,
                            GeometryKind g) {
  constexpr double kTiny = 1e-12;
  const double d1 = base_distance(p, a, g);
  const double d2 = base_distance(p, b, g);
  if (d1 < kTiny || d2 < kTiny) {
    throw Error(ErrorCode::DegenerateTriangle, "vertex coincides with a triangle corner");
  }
  if (g == GeometryKind::SphericalProduct &&
      (d1 > std::numbers::pi - kTiny || d2 > std::numbers::pi - kTiny)) {
    throw Error(ErrorCode::DegenerateTriangle, "vertex antipodal to a triangle corner");
  }
  const double c0 = g == GeometryKind::SphericalProduct
                        ? std::clamp(base_product(a, b, g), -1.0, 1.0)
                        : std::max(base_product(a, b, g), 1.0);
  const double c1 = C(g, d1), c2 = C(g, d2);
  // Derived ratio; clamping covers cancellation when a side is short.
  const double cos_gamma = sigma(g) * (c0 - c1 * c2) / (S(g, d1) * S(g, d2));
  return std::acos(std::clamp(cos_gamma, -1.0, 1.0));
}

}  // namespace thurston
