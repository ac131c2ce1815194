// SPDX-License-Identifier: Apache-2.0
//
// Run configuration for mesh extraction and grid dumps, its JSON form, and the
// bundled figure scenarios.
#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "thurston/error.hpp"
#include "thurston/field.hpp"
#include "thurston/geometry.hpp"
#include "thurston/isoptic.hpp"
#include "thurston/mesh.hpp"

namespace thurston {

struct ScenarioConfig {
  std::string name;
  GeometryKind geometry = GeometryKind::SphericalProduct;
  Vec3 a1{1, 0, 0};
  Vec3 a2{};
  double alpha_degrees = 90;
  SurfaceSelector selector = SurfaceSelector::Alpha;
  std::array<int, 3> resolution{64, 64, 64};
  std::optional<Box> bounds;  ///< derived from the segment when unset
  std::string output_path;
  ExportFormat format = ExportFormat::Obj;
  bool refine = true;

  double alpha() const { return alpha_degrees * std::numbers::pi / 180.0; }
};

inline GeometryKind parse_geometry(const std::string& s) {
  if (s == "s2xr") return GeometryKind::SphericalProduct;
  if (s == "h2xr") return GeometryKind::HyperbolicProduct;
  throw Error(ErrorCode::InvalidConfig, "geometry must be s2xr or h2xr, got '" + s + "'");
}

inline SurfaceSelector parse_selector(const std::string& s) {
  if (s == "alpha") return SurfaceSelector::Alpha;
  if (s == "supplement") return SurfaceSelector::Supplement;
  if (s == "union") return SurfaceSelector::Union;
  throw Error(ErrorCode::InvalidConfig,
              "selector must be alpha, supplement or union, got '" + s + "'");
}

inline ExportFormat parse_format(const std::string& s) {
  if (s == "obj") return ExportFormat::Obj;
  if (s == "ply") return ExportFormat::Ply;
  if (s == "csv") return ExportFormat::Csv;
  throw Error(ErrorCode::InvalidConfig, "format must be obj, ply or csv, got '" + s + "'");
}

/// Comma-separated reals, e.g. "4,1,2". The literal `e` is accepted as a
/// component and means Euler's number.
inline std::vector<double> parse_reals(const std::string& text, std::size_t expected,
                                       const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "e") {
      out.push_back(std::numbers::e);
      continue;
    }
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size() || !std::isfinite(v)) {
      throw Error(ErrorCode::InvalidConfig, what + ": '" + item + "' is not a real number");
    }
    out.push_back(v);
  }
  if (out.size() != expected) {
    throw Error(ErrorCode::InvalidConfig, what + ": expected " + std::to_string(expected) +
                                              " comma-separated values, got '" + text + "'");
  }
  return out;
}

inline Vec3 parse_point(const std::string& text, const std::string& what) {
  const auto v = parse_reals(text, 3, what);
  return {v[0], v[1], v[2]};
}

inline std::array<int, 3> parse_resolution(const std::string& text) {
  const auto v = parse_reals(text, 3, "--grid");
  std::array<int, 3> r{};
  for (int i = 0; i < 3; ++i) {
    if (v[i] != std::floor(v[i]) || v[i] < 2 || v[i] > 4096) {
      throw Error(ErrorCode::InvalidConfig, "--grid: each resolution must be an integer in [2, 4096]");
    }
    r[i] = static_cast<int>(v[i]);
  }
  return r;
}

inline Box parse_bounds(const std::string& text) {
  const auto v = parse_reals(text, 6, "--bounds");
  return {{v[0], v[2], v[4]}, {v[1], v[3], v[5]}};
}

/// Checks every field; the first problem is reported with the field name.
inline void validate(const ScenarioConfig& c) {
  auto fail = [](const std::string& field, const std::string& why) {
    throw Error(ErrorCode::InvalidConfig, "field '" + field + "': " + why);
  };
  if (!(c.alpha_degrees > 0.0 && c.alpha_degrees < 180.0)) fail("alpha_degrees", "must lie in (0, 180)");
  for (int n : c.resolution) {
    if (n < 2 || n > 4096) fail("grid.resolution", "each entry must be in [2, 4096]");
  }
  if (c.bounds) {
    const Box& b = *c.bounds;
    if (!(b.lo.x < b.hi.x && b.lo.y < b.hi.y && b.lo.z < b.hi.z)) {
      fail("grid.bounds", "need xmin < xmax, ymin < ymax, zmin < zmax");
    }
  }
  if (auto why = domain_violation(ModelPoint::from(c.a1), c.geometry); !why.empty()) fail("a1", why);
  if (auto why = domain_violation(ModelPoint::from(c.a2), c.geometry); !why.empty()) fail("a2", why);
  if (c.a1 == c.a2) fail("a2", "must differ from a1");
}

namespace detail {

inline int line_of_offset(const std::string& text, std::size_t offset) {
  int line = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) line += text[i] == '\n';
  return line;
}

inline Vec3 json_point(const nlohmann::json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 3) {
    throw Error(ErrorCode::InvalidConfig, "field '" + field + "': expected [x, y, z]");
  }
  for (const auto& v : j) {
    if (!v.is_number()) throw Error(ErrorCode::InvalidConfig, "field '" + field + "': entries must be numbers");
  }
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

}  // namespace detail

/// Parses a JSON scenario. Syntax errors carry `source:line`; semantic errors
/// carry the offending field name.
inline ScenarioConfig parse_scenario(const std::string& text, const std::string& source = "config") {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::InvalidConfig,
                source + ":" + std::to_string(detail::line_of_offset(text, e.byte)) + ": " + e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::InvalidConfig, source + ": top level must be an object");

  static const std::vector<std::string> known{"name", "geometry", "a1", "a2", "alpha_degrees",
                                              "selector", "grid", "output", "refine"};
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (std::find(known.begin(), known.end(), it.key()) == known.end()) {
      throw Error(ErrorCode::InvalidConfig, source + ": unknown field '" + it.key() + "'");
    }
  }
  auto field_error = [&](const std::string& f, const std::string& why) {
    return Error(ErrorCode::InvalidConfig, source + ": field '" + f + "': " + why);
  };

  ScenarioConfig c;
  try {
    c.name = j.value("name", std::string{});
    if (!j.contains("geometry")) throw field_error("geometry", "required");
    c.geometry = parse_geometry(j.at("geometry").get<std::string>());
    if (j.contains("a1")) c.a1 = detail::json_point(j.at("a1"), "a1");
    if (!j.contains("a2")) throw field_error("a2", "required");
    c.a2 = detail::json_point(j.at("a2"), "a2");
    if (!j.contains("alpha_degrees")) throw field_error("alpha_degrees", "required");
    if (!j.at("alpha_degrees").is_number()) throw field_error("alpha_degrees", "must be a number");
    c.alpha_degrees = j.at("alpha_degrees").get<double>();
    if (j.contains("selector")) c.selector = parse_selector(j.at("selector").get<std::string>());
    if (j.contains("refine")) c.refine = j.at("refine").get<bool>();
    if (j.contains("grid")) {
      const auto& g = j.at("grid");
      if (g.contains("resolution")) {
        const auto& r = g.at("resolution");
        if (!r.is_array() || r.size() != 3) throw field_error("grid.resolution", "expected [nx, ny, nz]");
        for (int i = 0; i < 3; ++i) {
          if (!r[i].is_number_integer()) throw field_error("grid.resolution", "entries must be integers");
          c.resolution[i] = r[i].get<int>();
        }
      }
      if (g.contains("bounds") && !g.at("bounds").is_null()) {
        const auto& b = g.at("bounds");
        if (!b.is_array() || b.size() != 6) {
          throw field_error("grid.bounds", "expected [xmin, xmax, ymin, ymax, zmin, zmax]");
        }
        for (const auto& v : b) {
          if (!v.is_number()) throw field_error("grid.bounds", "entries must be numbers");
        }
        c.bounds = Box{{b[0].get<double>(), b[2].get<double>(), b[4].get<double>()},
                       {b[1].get<double>(), b[3].get<double>(), b[5].get<double>()}};
      }
    }
    if (j.contains("output")) {
      const auto& o = j.at("output");
      c.output_path = o.value("path", std::string{});
      if (o.contains("format")) c.format = parse_format(o.at("format").get<std::string>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidConfig, source + ": " + e.what());
  } catch (const Error& e) {
    if (std::string(e.what()).find(source + ":") != std::string::npos) throw;
    throw Error(ErrorCode::InvalidConfig, source + ": " + e.what());
  }
  try {
    validate(c);
  } catch (const Error& e) {
    throw Error(ErrorCode::InvalidConfig, source + ": " + e.what());
  }
  return c;
}

/// Effective configuration; feeding it back through parse_scenario yields
/// the same run.
inline std::string dump_scenario(const ScenarioConfig& c) {
  nlohmann::ordered_json j;
  if (!c.name.empty()) j["name"] = c.name;
  j["geometry"] = to_string(c.geometry);
  j["a1"] = {c.a1.x, c.a1.y, c.a1.z};
  j["a2"] = {c.a2.x, c.a2.y, c.a2.z};
  j["alpha_degrees"] = c.alpha_degrees;
  j["selector"] = to_string(c.selector);
  j["grid"]["resolution"] = c.resolution;
  if (c.bounds) {
    const Box& b = *c.bounds;
    j["grid"]["bounds"] = {b.lo.x, b.hi.x, b.lo.y, b.hi.y, b.lo.z, b.hi.z};
  } else {
    j["grid"]["bounds"] = nullptr;
  }
  j["output"]["path"] = c.output_path;
  j["output"]["format"] = to_string(c.format);
  j["refine"] = c.refine;
  return j.dump(2) + "\n";
}

/// Box used for the run: explicit bounds, or balls of radius equal to the
/// segment length around both endpoints.
inline Box effective_bounds(const ScenarioConfig& c) {
  if (c.bounds) return *c.bounds;
  const ModelPoint a1 = ModelPoint::from(c.a1), a2 = ModelPoint::from(c.a2);
  return auto_bounds(a1, a2, c.geometry, distance(a1, a2, c.geometry));
}

inline GridSpec grid_spec(const ScenarioConfig& c) { return {effective_bounds(c), c.resolution}; }

inline IsopticField make_field(const ScenarioConfig& c) {
  return IsopticField(ModelPoint::from(c.a1), ModelPoint::from(c.a2), c.geometry, c.alpha(),
                      c.selector);
}

/// Figure scenarios: A2 = (1, 4, 1, 2) isoptics in both geometries and the
/// Thaloid of A2 = (1, 5, 0, 0). Group names expand to several scenarios.
inline std::vector<ScenarioConfig> builtin_scenarios(const std::string& name) {
  auto make = [](std::string n, GeometryKind g, Vec3 a2, double alpha, Box box) {
    ScenarioConfig c;
    c.name = std::move(n);
    c.geometry = g;
    c.a2 = a2;
    c.alpha_degrees = alpha;
    c.bounds = box;
    c.output_path = c.name + ".obj";
    return c;
  };
  const auto S = GeometryKind::SphericalProduct, H = GeometryKind::HyperbolicProduct;
  const Box s2_box{{-14, -5, -6}, {6, 4, 4}};
  const Box h2_box{{0, -3, -3}, {6, 4, 4}};
  const Box thaloid_s2{{0.5, -2.5, -2.5}, {5.5, 2.5, 2.5}};
  const Box thaloid_h2{{0.5, -3, -3}, {5.5, 3, 3}};
  static const std::map<std::string, std::vector<std::string>> groups{
      {"fig4", {"fig4a", "fig4b"}}, {"fig5", {"fig5a", "fig5b"}}, {"fig6", {"fig6a", "fig6b"}}};
  if (auto it = groups.find(name); it != groups.end()) {
    std::vector<ScenarioConfig> out;
    for (const auto& member : it->second) out.push_back(builtin_scenarios(member).front());
    return out;
  }
  if (name == "fig4a") return {make(name, S, {4, 1, 2}, 80, s2_box)};
  if (name == "fig4b") return {make(name, S, {4, 1, 2}, 120, s2_box)};
  if (name == "fig5a") return {make(name, S, {5, 0, 0}, 90, thaloid_s2)};
  if (name == "fig5b") return {make(name, H, {5, 0, 0}, 90, thaloid_h2)};
  if (name == "fig6a") return {make(name, H, {4, 1, 2}, 75, h2_box)};
  if (name == "fig6b") return {make(name, H, {4, 1, 2}, 120, h2_box)};
  throw Error(ErrorCode::InvalidConfig, "unknown scenario '" + name +
                                            "' (known: fig4 fig4a fig4b fig5 fig5a fig5b fig6 fig6a fig6b)");
}

inline std::vector<std::string> builtin_scenario_names() {
  return {"fig4a", "fig4b", "fig5a", "fig5b", "fig6a", "fig6b"};
}

}  // namespace thurston
