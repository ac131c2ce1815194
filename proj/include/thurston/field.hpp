// SPDX-License-Identifier: Apache-2.0
//
// Scalar fields over model coordinates, in the shape expected by
// sample_field / extract_isosurface: Vec3 -> std::optional<double>, empty
// where the field is undefined.
#pragma once

#include <numbers>
#include <optional>

#include "thurston/curves.hpp"
#include "thurston/geometry.hpp"
#include "thurston/isoptic.hpp"
#include "thurston/mesh.hpp"

namespace thurston {

/// Nodes this close (geodesically) to an endpoint, or this close to the
/// antipode of an endpoint projection on S2, are masked out.
inline constexpr double kDegeneracyBand = 1e-6;

/// Isoptic residual of the segment a1-a2 for the chosen surface(s).
class IsopticField {
 public:
  IsopticField(const ModelPoint& a1, const ModelPoint& a2, GeometryKind g, double alpha,
               SurfaceSelector selector = SurfaceSelector::Alpha)
      : segment_(normalize_segment(a1, a2, g, alpha)),
        selector_(selector),
        identity_frame_(a1 == kOrigin) {}

  explicit IsopticField(const IsopticProblem& prob,
                        SurfaceSelector selector = SurfaceSelector::Alpha)
      : IsopticField(kOrigin, prob.a2, prob.geometry, prob.alpha, selector) {}

  const IsopticProblem& problem() const { return segment_.problem; }
  const NormalizedSegment& segment() const { return segment_; }
  SurfaceSelector selector() const { return selector_; }

  std::optional<double> operator()(Vec3 pos) const {
    const GeometryKind g = segment_.problem.geometry;
    ModelPoint p = ModelPoint::from(pos);
    if (!is_valid(p, g)) return std::nullopt;
    try {
      if (!identity_frame_) p = apply(segment_.to_normal, p, g);
      const VertexData v = vertex_data(segment_.problem, p);
      if (v.dist1() < kDegeneracyBand || v.dist2() < kDegeneracyBand) return std::nullopt;
      if (g == GeometryKind::SphericalProduct &&
          (std::numbers::pi - v.d1 < kDegeneracyBand ||
           std::numbers::pi - v.d2 < kDegeneracyBand)) {
        return std::nullopt;
      }
      const double c = detail::cosine(detail::closed_form_tangents(segment_.problem, p));
      return selected_residual(c, segment_.problem.alpha, selector_);
    } catch (const Error&) {
      return std::nullopt;
    }
  }

 private:
  NormalizedSegment segment_;
  SurfaceSelector selector_;
  bool identity_frame_;
};

/// Implicit equation of the geodesic sphere of given radius about `center`:
/// d(center, p)^2 - radius^2 (square-root form of the arcC argument).
class SphereField {
 public:
  SphereField(const SphereSpec& spec, GeometryKind g)
      : spec_(spec), g_(g), to_origin_(pullback_matrix(spec.center, g)) {}

  std::optional<double> operator()(Vec3 pos) const {
    ModelPoint p = ModelPoint::from(pos);
    if (!is_valid(p, g_)) return std::nullopt;
    try {
      if (!(spec_.center == kOrigin)) p = apply(to_origin_, p, g_);
      return origin_sphere_residual(p, spec_.radius, g_);
    } catch (const Error&) {
      return std::nullopt;
    }
  }

 private:
  SphereSpec spec_;
  GeometryKind g_;
  Isometry4 to_origin_;
};

/// Bounding box of the union of geodesic balls of radius `pad` around both
/// endpoints, enlarged by 5% per axis. The fibre-norm range covered is
/// [N e^-pad, N e^pad] for each endpoint.
inline Box auto_bounds(const ModelPoint& a1, const ModelPoint& a2, GeometryKind g, double pad) {
  Box b{{HUGE_VAL, HUGE_VAL, HUGE_VAL}, {-HUGE_VAL, -HUGE_VAL, -HUGE_VAL}};
  auto grow = [&](const ModelPoint& p) {
    b.lo = {std::min(b.lo.x, p.x), std::min(b.lo.y, p.y), std::min(b.lo.z, p.z)};
    b.hi = {std::max(b.hi.x, p.x), std::max(b.hi.y, p.y), std::max(b.hi.z, p.z)};
  };
  for (const ModelPoint& c : {a1, a2}) {
    grow(c);
    for (const ModelPoint& q : sphere_points({c, pad}, g, 72, 37)) grow(q);
  }
  const Vec3 margin = 0.05 * (b.hi - b.lo);
  b.lo = b.lo - margin;
  b.hi = b.hi + margin;
  return b;
}

}  // namespace thurston
