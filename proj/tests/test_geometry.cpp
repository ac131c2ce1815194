// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "sampling.hpp"
#include "thurston/geometry.hpp"

using namespace thurston;
using thurston::testing::kBoth;
using thurston::testing::Sampler;

namespace {

constexpr auto S2 = GeometryKind::SphericalProduct;
constexpr auto H2 = GeometryKind::HyperbolicProduct;
const double e = std::numbers::e;
const double pi = std::numbers::pi;

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& err) {
    return err.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::InvalidConfig;
}

bool cholesky_ok(const MetricTensor& m) {
  double l[3][3] = {};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j <= i; ++j) {
      double s = m[i][j];
      for (int k = 0; k < j; ++k) s -= l[i][k] * l[j][k];
      if (i == j) {
        if (!(s > 0)) return false;
        l[i][i] = std::sqrt(s);
      } else {
        l[i][j] = s / l[j][j];
      }
    }
  }
  return true;
}

}  // namespace

TEST(FibreNorm, Examples) {
  EXPECT_DOUBLE_EQ(fibre_norm({0, 1, 0}, S2), 1.0);
  EXPECT_NEAR(fibre_norm({std::cosh(1.0), std::sinh(1.0), 0}, H2), 1.0, 1e-15);
  EXPECT_DOUBLE_EQ(fibre_norm({1, 2, 2}, S2), 3.0);
  EXPECT_DOUBLE_EQ(fibre_norm(kOrigin, S2), 1.0);
  EXPECT_DOUBLE_EQ(fibre_norm(kOrigin, H2), 1.0);
}

TEST(FibreNorm, RejectsPointsOutsideTheDomain) {
  EXPECT_EQ(code_of([] { fibre_norm({0, 0, 0}, S2); }), ErrorCode::InvalidPoint);
  EXPECT_EQ(code_of([] { fibre_norm({1, 2, 0}, H2); }), ErrorCode::InvalidPoint);
  EXPECT_EQ(code_of([] { fibre_norm({-2, 0, 0}, H2); }), ErrorCode::InvalidPoint);
  EXPECT_NE(domain_violation({1, 1, 0}, H2), "");
}

TEST(ModelPointTest, HomogeneousInputIsDividedThrough) {
  const ModelPoint p = ModelPoint::homogeneous(2, 2, 4, 6);
  EXPECT_EQ(p, (ModelPoint{1, 2, 3}));
  EXPECT_EQ(code_of([] { ModelPoint::homogeneous(0, 1, 0, 0); }), ErrorCode::InvalidPoint);
}

TEST(UnitProject, Examples) {
  const ModelPoint p = unit_project({1, 2, 2}, S2);
  EXPECT_NEAR(p.x, 1.0 / 3, 1e-15);
  EXPECT_NEAR(p.y, 2.0 / 3, 1e-15);
  EXPECT_NEAR(p.z, 2.0 / 3, 1e-15);
  const ModelPoint q = unit_project({2 * std::cosh(1.0), 2 * std::sinh(1.0), 0}, H2);
  EXPECT_NEAR(q.x, std::cosh(1.0), 1e-15);
  EXPECT_NEAR(q.y, std::sinh(1.0), 1e-15);
  EXPECT_EQ(unit_project(kOrigin, H2), kOrigin);
}

TEST(UnitProject, IsIdempotent) {
  Sampler s(11);
  for (GeometryKind g : kBoth) {
    for (int i = 0; i < 1000; ++i) {
      const ModelPoint once = unit_project(s.point(g), g);
      const ModelPoint twice = unit_project(once, g);
      EXPECT_NEAR(fibre_norm(once, g), 1.0, 1e-14);
      EXPECT_EQ(twice, once);
    }
  }
}

TEST(Charts, Examples) {
  for (GeometryKind g : kBoth) EXPECT_EQ(chart_to_model({0, 0, 0}, g), kOrigin);
  const ModelPoint s = chart_to_model({1, pi / 2, 0}, S2);
  EXPECT_NEAR(s.x, 0, 1e-15);
  EXPECT_NEAR(s.y, e, 1e-15);
  EXPECT_NEAR(s.z, 0, 1e-15);
  const ModelPoint h = chart_to_model({0, 1, pi / 2}, H2);
  EXPECT_NEAR(h.x, std::cosh(1.0), 1e-15);
  EXPECT_NEAR(h.y, 0, 1e-15);
  EXPECT_NEAR(h.z, std::sinh(1.0), 1e-15);
}

TEST(Charts, RejectOutOfRangeAngles) {
  EXPECT_EQ(code_of([] { chart_to_model({0, 4.0, 0}, S2); }), ErrorCode::InvalidChart);
  EXPECT_EQ(code_of([] { chart_to_model({0, -1.0, 0}, H2); }), ErrorCode::InvalidChart);
  EXPECT_EQ(code_of([] { chart_to_model({0, 1.0, -4.0}, S2); }), ErrorCode::InvalidChart);
}

TEST(Charts, RoundTripAwayFromSingularities) {
  Sampler s(12);
  for (GeometryKind g : kBoth) {
    for (int i = 0; i < 10000; ++i) {
      ChartCoords c{s.uniform(-2, 2), 0, s.uniform(-pi + 1e-3, pi)};
      c.radial = g == S2 ? s.uniform(1e-3, pi - 1e-3) : s.uniform(1e-3, 2.5);
      const ChartCoords back = model_to_chart(chart_to_model(c, g), g);
      EXPECT_NEAR(back.t, c.t, 1e-12);
      EXPECT_NEAR(back.radial, c.radial, 1e-12);
      EXPECT_NEAR(back.phi, c.phi, 1e-12);
    }
  }
}

TEST(Metric, IdentityAtOrigin) {
  for (GeometryKind g : kBoth) {
    const MetricTensor m = metric_at(kOrigin, g);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) EXPECT_NEAR(m[i][j], i == j ? 1.0 : 0.0, 1e-15);
    }
  }
}

TEST(Metric, SphericalExample) {
  const MetricTensor m = metric_at({1, 2, 2}, S2);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) EXPECT_NEAR(m[i][j], i == j ? 1.0 / 9 : 0.0, 1e-16);
  }
}

TEST(Metric, SymmetricPositiveDefiniteOnRandomPoints) {
  Sampler s(13);
  for (GeometryKind g : kBoth) {
    for (int i = 0; i < 10000; ++i) {
      const ModelPoint p = s.point(g, 2.0, 3.0);
      const MetricTensor m = metric_at(p, g);
      for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) ASSERT_EQ(m[a][b], m[b][a]);
      }
      ASSERT_TRUE(cholesky_ok(m)) << describe(p);
    }
  }
}

// Transport check: with J the Jacobian of chart_to_model (fourth-order central
// differences), J^T g J must be the diagonal chart metric
// dt^2 + dtheta^2 + S(theta)^2 dphi^2.
TEST(Metric, AgreesWithChartMetricPulledBack) {
  Sampler s(14);
  const double h = 1e-3;
  for (GeometryKind g : kBoth) {
    for (int n = 0; n < 1000; ++n) {
      ChartCoords c{s.uniform(-1.5, 1.5), 0, s.uniform(-3.0, 3.0)};
      c.radial = g == S2 ? s.uniform(0.05, pi - 0.05) : s.uniform(0.05, 2.0);
      const ModelPoint p = chart_to_model(c, g);
      auto model_at = [&](int i, double offset) {
        ChartCoords q = c;
        (i == 0 ? q.t : i == 1 ? q.radial : q.phi) += offset;
        return chart_to_model(q, g).vec();
      };
      Vec3 J[3];  // J[i] = d model / d chart_i
      for (int i = 0; i < 3; ++i) {
        J[i] = (1.0 / (12 * h)) * (-1.0 * model_at(i, 2 * h) + 8.0 * model_at(i, h) -
                                   8.0 * model_at(i, -h) + model_at(i, -2 * h));
      }
      const MetricTensor m = metric_at(p, g);
      const double diag[3] = {1.0, 1.0, std::pow(S(g, c.radial), 2)};
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
          const Vec3 mj{m[0][0] * J[j].x + m[0][1] * J[j].y + m[0][2] * J[j].z,
                        m[1][0] * J[j].x + m[1][1] * J[j].y + m[1][2] * J[j].z,
                        m[2][0] * J[j].x + m[2][1] * J[j].y + m[2][2] * J[j].z};
          EXPECT_NEAR(dot(J[i], mj), i == j ? diag[i] : 0.0, 1e-9)
              << describe(p) << " entry " << i << j;
        }
      }
    }
  }
}

TEST(BaseDistance, Examples) {
  const ModelPoint u{0.6, 0.8, 0};
  EXPECT_EQ(base_distance(u, u, S2), 0.0);
  EXPECT_NEAR(base_distance({1, 0, 0}, {0, 1, 0}, S2), pi / 2, 1e-15);
  EXPECT_NEAR(base_distance(kOrigin, {std::cosh(1.0), std::sinh(1.0), 0}, H2), 1.0, 1e-7);
  EXPECT_EQ(code_of([] { base_distance({1, 2, 2}, kOrigin, S2); }), ErrorCode::NotOnUnitSurface);
}

TEST(BaseDistance, IsAMetricOnSampledTriples) {
  Sampler s(15);
  for (GeometryKind g : kBoth) {
    for (int i = 0; i < 3000; ++i) {
      const ModelPoint a = s.unit_point(g), b = s.unit_point(g), c = s.unit_point(g);
      const double ab = base_distance(a, b, g), ba = base_distance(b, a, g);
      EXPECT_EQ(ab, ba);
      EXPECT_LE(ab, base_distance(a, c, g) + base_distance(c, b, g) + 1e-12);
      EXPECT_GE(ab, 0.0);
    }
  }
}

TEST(BaseAngle, Examples) {
  EXPECT_NEAR(base_angle_at({0, 0, 1}, {1, 0, 0}, {0, 1, 0}, S2), pi / 2, 1e-15);
  const double c = std::cos(0.4), s = std::sin(0.4);
  EXPECT_NEAR(base_angle_at({1, 0, 0}, {c, s, 0}, {c, -s, 0}, S2), pi, 1e-7);
  EXPECT_NEAR(base_angle_at(kOrigin, {std::cosh(1.0), std::sinh(1.0), 0},
                            {std::cosh(1.0), 0, std::sinh(1.0)}, H2),
              pi / 2, 1e-12);
}

TEST(BaseAngle, DegenerateTriangles) {
  EXPECT_EQ(code_of([] { base_angle_at({1, 0, 0}, {1, 0, 0}, {0, 1, 0}, S2); }),
            ErrorCode::DegenerateTriangle);
  EXPECT_EQ(code_of([] { base_angle_at({1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, S2); }),
            ErrorCode::DegenerateTriangle);
}

TEST(ArcC, ClampsWithinToleranceAndRejectsBeyond) {
  EXPECT_EQ(arcC(S2, 1.0 + 1e-10), 0.0);
  EXPECT_EQ(arcC(H2, 1.0 - 1e-10), 0.0);
  EXPECT_EQ(code_of([] { arcC(S2, 1.0 + 1e-6); }), ErrorCode::NumericDomain);
  EXPECT_EQ(code_of([] { arcC(H2, 0.5); }), ErrorCode::NumericDomain);
}
