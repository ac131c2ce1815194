// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <string>

#include "thurston/scenario.hpp"

using namespace thurston;

namespace {

std::string error_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::InvalidConfig);
    return err.what();
  }
  ADD_FAILURE() << "no error thrown";
  return {};
}

const char* kValid = R"({
  "name": "demo",
  "geometry": "h2xr",
  "a2": [4, 1, 2],
  "alpha_degrees": 75,
  "selector": "union",
  "grid": {"resolution": [16, 20, 24], "bounds": [0, 6, -3, 4, -3, 4]},
  "output": {"path": "demo.ply", "format": "ply"}
})";

}  // namespace

TEST(Parse, PointsAndLists) {
  EXPECT_EQ(parse_point("1,2.5,-3", "p"), (Vec3{1, 2.5, -3}));
  EXPECT_EQ(parse_point("e,0,0", "p").x, std::numbers::e);
  EXPECT_NE(error_of([] { parse_point("1,2", "--a2"); }).find("--a2"), std::string::npos);
  error_of([] { parse_point("1,x,2", "p"); });
  EXPECT_EQ(parse_resolution("8,9,10"), (std::array<int, 3>{8, 9, 10}));
  error_of([] { parse_resolution("1,9,10"); });
  const Box b = parse_bounds("0,1,2,3,4,5");
  EXPECT_EQ(b.lo, (Vec3{0, 2, 4}));
  EXPECT_EQ(b.hi, (Vec3{1, 3, 5}));
  EXPECT_EQ(parse_geometry("s2xr"), GeometryKind::SphericalProduct);
  EXPECT_EQ(parse_selector("supplement"), SurfaceSelector::Supplement);
  EXPECT_EQ(parse_format("ply"), ExportFormat::Ply);
  error_of([] { parse_geometry("e3"); });
}

TEST(Parse, ValidScenario) {
  const ScenarioConfig c = parse_scenario(kValid, "demo.json");
  EXPECT_EQ(c.name, "demo");
  EXPECT_EQ(c.geometry, GeometryKind::HyperbolicProduct);
  EXPECT_EQ(c.a1, (Vec3{1, 0, 0}));
  EXPECT_EQ(c.a2, (Vec3{4, 1, 2}));
  EXPECT_NEAR(c.alpha(), 75 * std::numbers::pi / 180, 1e-15);
  EXPECT_EQ(c.selector, SurfaceSelector::Union);
  EXPECT_EQ(c.resolution, (std::array<int, 3>{16, 20, 24}));
  ASSERT_TRUE(c.bounds);
  EXPECT_EQ(c.bounds->hi, (Vec3{6, 4, 4}));
  EXPECT_EQ(c.format, ExportFormat::Ply);
}

TEST(Parse, SyntaxErrorsNameTheLine) {
  const std::string text = "{\n  \"geometry\": \"s2xr\",\n  \"a2\": [4, 1 2]\n}";
  const std::string msg = error_of([&] { parse_scenario(text, "bad.json"); });
  EXPECT_NE(msg.find("bad.json:3"), std::string::npos) << msg;
}

TEST(Parse, SemanticErrorsNameTheField) {
  EXPECT_NE(error_of([] { parse_scenario(R"({"geometry": "s2xr", "a2": [4,1,2], "alpha_degrees": 200})"); })
                .find("alpha_degrees"),
            std::string::npos);
  EXPECT_NE(error_of([] { parse_scenario(R"({"geometry": "s2xr", "alpha_degrees": 90})"); }).find("a2"),
            std::string::npos);
  EXPECT_NE(error_of([] { parse_scenario(R"({"geometry": "h2xr", "a2": [1,3,0], "alpha_degrees": 90})"); })
                .find("a2"),
            std::string::npos);
  EXPECT_NE(error_of([] { parse_scenario(R"({"geometry": "s2xr", "a2": [1,0,0], "alpha_degrees": 90})"); })
                .find("a2"),
            std::string::npos);
  EXPECT_NE(error_of([] {
              parse_scenario(R"({"geometry": "s2xr", "a2": [4,1,2], "alpha_degrees": 90, "grid": {"resolution": [1,2,3]}})");
            }).find("grid.resolution"),
            std::string::npos);
  EXPECT_NE(error_of([] {
              parse_scenario(R"({"geometry": "s2xr", "a2": [4,1,2], "alpha_degrees": 90, "colour": 3})");
            }).find("colour"),
            std::string::npos);
}

TEST(Dump, RoundTripIsExact) {
  ScenarioConfig c = parse_scenario(kValid);
  c.a2 = {4.1000000000000001, 1.0 / 3, std::sqrt(2.0)};
  c.alpha_degrees = 75.123456789012345;
  const std::string once = dump_scenario(c);
  const ScenarioConfig back = parse_scenario(once);
  EXPECT_EQ(back.a2, c.a2);
  EXPECT_EQ(back.alpha_degrees, c.alpha_degrees);
  EXPECT_EQ(dump_scenario(back), once);
}

TEST(Builtin, FigureScenarios) {
  EXPECT_EQ(builtin_scenarios("fig4").size(), 2u);
  EXPECT_EQ(builtin_scenarios("fig5").size(), 2u);
  EXPECT_EQ(builtin_scenarios("fig6").size(), 2u);
  const ScenarioConfig f4a = builtin_scenarios("fig4a").front();
  EXPECT_EQ(f4a.geometry, GeometryKind::SphericalProduct);
  EXPECT_EQ(f4a.a2, (Vec3{4, 1, 2}));
  EXPECT_EQ(f4a.alpha_degrees, 80);
  const ScenarioConfig f6b = builtin_scenarios("fig6b").front();
  EXPECT_EQ(f6b.geometry, GeometryKind::HyperbolicProduct);
  EXPECT_EQ(f6b.alpha_degrees, 120);
  EXPECT_EQ(builtin_scenarios("fig5b").front().a2, (Vec3{5, 0, 0}));
  for (const auto& name : builtin_scenario_names()) {
    const ScenarioConfig c = builtin_scenarios(name).front();
    EXPECT_NO_THROW(validate(c));
    EXPECT_EQ(dump_scenario(parse_scenario(dump_scenario(c))), dump_scenario(c));
  }
  error_of([] { builtin_scenarios("fig7"); });
}

TEST(Bounds, AutoBoxContainsBothEndpointBalls) {
  ScenarioConfig c;
  c.geometry = GeometryKind::HyperbolicProduct;
  c.a2 = {3, 0.5, 0.2};
  const Box b = effective_bounds(c);
  for (const Vec3& p : {c.a1, c.a2}) {
    EXPECT_TRUE(p.x > b.lo.x && p.x < b.hi.x && p.y > b.lo.y && p.y < b.hi.y && p.z > b.lo.z && p.z < b.hi.z);
  }
  c.bounds = Box{{0, 0, 0}, {1, 1, 1}};
  EXPECT_EQ(effective_bounds(c).hi, (Vec3{1, 1, 1}));
}
