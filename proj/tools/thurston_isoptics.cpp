// SPDX-License-Identifier: Apache-2.0
//
// thurston-isoptics: distances, subtended angles, isoptic meshes, Thaloids
// and grid dumps in S2xR and H2xR.
//
// Exit codes: 0 ok, 2 domain / configuration error, 3 degenerate input,
// 4 empty result.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "thurston/thurston.hpp"

namespace {

using namespace thurston;

constexpr int kExitOk = 0;
constexpr int kExitDomain = 2;
constexpr int kExitDegenerate = 3;
constexpr int kExitEmpty = 4;

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::DegenerateVertex:
    case ErrorCode::DegenerateProjection:
    case ErrorCode::DegenerateTriangle:
    case ErrorCode::ZeroVector:
      return kExitDegenerate;
    case ErrorCode::EmptyMesh:
      return kExitEmpty;
    default:
      return kExitDomain;
  }
}

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

ModelPoint checked_point(const std::string& text, GeometryKind g, const std::string& what) {
  const ModelPoint p = ModelPoint::from(parse_point(text, what));
  if (auto why = domain_violation(p, g); !why.empty()) {
    throw Error(ErrorCode::InvalidPoint, what + " " + describe(p) + " is not a point of " +
                                             to_string(g) + ": " + why);
  }
  return p;
}

int resolve_threads(int flag) {
  if (flag > 0) return flag;
  if (const char* env = std::getenv("THURSTON_ISOPTICS_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return n;
    } catch (const std::exception&) {
    }
    throw Error(ErrorCode::InvalidConfig, "THURSTON_ISOPTICS_THREADS must be a positive integer");
  }
  return default_thread_count();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidConfig, "cannot open '" + path + "' for writing");
  out << text;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidConfig, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Options shared by `isoptic` and `sample`; explicit flags override the
/// config file or bundled scenario.
struct RunOptions {
  std::string config_path;
  std::string scenario;
  std::string geometry, a1, a2, selector, grid, bounds, out, format, dump_config;
  double alpha = 0;
  int threads = 0;
  bool no_refine = false;
};

void add_run_options(CLI::App* cmd, RunOptions& o, bool mesh_output) {
  cmd->add_option("config", o.config_path, "JSON scenario file");
  cmd->add_option("--scenario", o.scenario, "bundled scenario: fig4[a|b] fig5[a|b] fig6[a|b]");
  cmd->add_option("--geometry", o.geometry, "s2xr or h2xr");
  cmd->add_option("--a1", o.a1, "first endpoint x,y,z (default 1,0,0)");
  cmd->add_option("--a2", o.a2, "second endpoint x,y,z");
  cmd->add_option("--alpha", o.alpha, "target angle in degrees");
  cmd->add_option("--selector", o.selector, "alpha, supplement or union");
  cmd->add_option("--grid", o.grid, "resolution NX,NY,NZ");
  cmd->add_option("--bounds", o.bounds, "xmin,xmax,ymin,ymax,zmin,zmax");
  cmd->add_option("--out", o.out, "output path (directory when a scenario group is given)");
  cmd->add_option("--threads", o.threads, "worker threads (env THURSTON_ISOPTICS_THREADS)");
  cmd->add_option("--dump-config", o.dump_config, "write the effective config as JSON");
  if (mesh_output) {
    cmd->add_option("--format", o.format, "obj, ply or csv");
    cmd->add_flag("--no-refine", o.no_refine, "skip edge refinement of mesh vertices");
  }
}

std::vector<ScenarioConfig> build_configs(const RunOptions& o, const CLI::App& cmd) {
  std::vector<ScenarioConfig> configs;
  if (!o.config_path.empty() && !o.scenario.empty()) {
    throw Error(ErrorCode::InvalidConfig, "give either a config file or --scenario, not both");
  }
  if (!o.config_path.empty()) {
    configs.push_back(parse_scenario(read_text(o.config_path), o.config_path));
  } else if (!o.scenario.empty()) {
    configs = builtin_scenarios(o.scenario);
  } else {
    ScenarioConfig c;
    if (o.geometry.empty()) throw Error(ErrorCode::InvalidConfig, "--geometry is required");
    if (o.a2.empty()) throw Error(ErrorCode::InvalidConfig, "--a2 is required");
    if (cmd.count("--alpha") == 0) throw Error(ErrorCode::InvalidConfig, "--alpha is required");
    configs.push_back(c);
  }
  const bool group = configs.size() > 1;
  if (group && !o.out.empty()) std::filesystem::create_directories(o.out);
  for (ScenarioConfig& c : configs) {
    if (!o.geometry.empty()) c.geometry = parse_geometry(o.geometry);
    if (!o.a1.empty()) c.a1 = parse_point(o.a1, "--a1");
    if (!o.a2.empty()) c.a2 = parse_point(o.a2, "--a2");
    if (cmd.count("--alpha")) c.alpha_degrees = o.alpha;
    if (!o.selector.empty()) c.selector = parse_selector(o.selector);
    if (!o.grid.empty()) c.resolution = parse_resolution(o.grid);
    if (!o.bounds.empty()) c.bounds = parse_bounds(o.bounds);
    if (!o.format.empty()) c.format = parse_format(o.format);
    if (o.no_refine) c.refine = false;
    if (!o.out.empty()) {
      c.output_path = group ? (std::filesystem::path(o.out) /
                               (c.name + "." + to_string(c.format))).string()
                            : o.out;
    } else if (!c.output_path.empty() && !o.format.empty()) {
      c.output_path = std::filesystem::path(c.output_path)
                          .replace_extension(to_string(c.format))
                          .string();
    }
    validate(c);
  }
  return configs;
}

int run_isoptic(const RunOptions& o, const CLI::App& cmd) {
  const int threads = resolve_threads(o.threads);
  int status = kExitOk;
  for (ScenarioConfig c : build_configs(o, cmd)) {
    const auto t0 = std::chrono::steady_clock::now();
    c.bounds = effective_bounds(c);
    if (!o.dump_config.empty()) write_text(o.dump_config, dump_scenario(c));
    const IsopticField field = make_field(c);
    const SampleGrid grid = sample_field(grid_spec(c), field, threads);
    ExtractOptions opts;
    opts.refine = c.refine;
    TriangleMesh mesh;
    try {
      mesh = extract_isosurface(grid, field, opts);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::EmptyMesh) throw;
      std::cerr << (c.name.empty() ? "isoptic" : c.name) << ": empty mesh (no zero crossing in the box)\n";
      status = kExitEmpty;
      continue;
    }
    const std::string data = export_mesh(mesh, c.format);
    std::ostream& summary = c.output_path.empty() ? std::cerr : std::cout;
    if (c.output_path.empty()) std::cout << data;
    else write_text(c.output_path, data);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    summary << (c.name.empty() ? "isoptic" : c.name) << ": " << to_string(c.geometry)
            << " alpha=" << c.alpha_degrees << "deg selector=" << to_string(c.selector)
            << " vertices=" << mesh.vertices.size() << " triangles=" << mesh.triangles.size()
            << " max|residual|=" << mesh.max_abs_residual() << " time=" << fixed(seconds, 3)
            << "s" << (c.output_path.empty() ? "" : " -> " + c.output_path) << "\n";
  }
  return status;
}

int run_sample(const RunOptions& o, const CLI::App& cmd) {
  const int threads = resolve_threads(o.threads);
  const auto configs = build_configs(o, cmd);
  if (configs.size() != 1) throw Error(ErrorCode::InvalidConfig, "sample takes a single scenario");
  ScenarioConfig c = configs.front();
  c.bounds = effective_bounds(c);
  if (!o.dump_config.empty()) write_text(o.dump_config, dump_scenario(c));
  const SampleGrid grid = sample_field(grid_spec(c), make_field(c), threads);
  std::ostringstream os;
  write_grid_csv(os, grid);
  if (o.out.empty()) std::cout << os.str();
  else write_text(o.out, os.str());
  return kExitOk;
}

/// Accepts "[geometry] P [Q]" positionally, or --geometry with points.
struct DistanceArgs {
  std::vector<std::string> positional;
  std::string geometry;
};

int run_distance(const DistanceArgs& a) {
  std::vector<std::string> pos = a.positional;
  std::string geometry = a.geometry;
  if (!pos.empty() && (pos.front() == "s2xr" || pos.front() == "h2xr")) {
    if (!geometry.empty() && geometry != pos.front()) {
      throw Error(ErrorCode::InvalidConfig, "conflicting geometry arguments");
    }
    geometry = pos.front();
    pos.erase(pos.begin());
  }
  if (geometry.empty()) throw Error(ErrorCode::InvalidConfig, "geometry (s2xr or h2xr) is required");
  if (pos.empty() || pos.size() > 2) {
    throw Error(ErrorCode::InvalidConfig, "distance takes one point (from the origin) or two points");
  }
  const GeometryKind g = parse_geometry(geometry);
  const ModelPoint p = checked_point(pos[0], g, "point");
  const ModelPoint q = pos.size() == 2 ? checked_point(pos[1], g, "point") : kOrigin;
  std::cout << fixed(pos.size() == 2 ? distance(p, q, g) : distance(kOrigin, p, g), 12) << "\n";
  return kExitOk;
}

struct AngleArgs {
  std::string geometry = "s2xr";
  std::string point, a1 = "1,0,0", a2;
  double alpha = 0;
};

int run_angle(const AngleArgs& a, const CLI::App& cmd) {
  const GeometryKind g = parse_geometry(a.geometry);
  const ModelPoint p = checked_point(a.point, g, "point");
  const ModelPoint a1 = checked_point(a.a1, g, "--a1");
  const ModelPoint a2 = checked_point(a.a2, g, "--a2");
  double alpha = std::numbers::pi / 2;
  if (cmd.count("--alpha")) {
    if (!(a.alpha > 0 && a.alpha < 180)) throw Error(ErrorCode::InvalidConfig, "--alpha must lie in (0, 180)");
    alpha = a.alpha * std::numbers::pi / 180;
  }
  if (p == a1 || p == a2) throw Error(ErrorCode::DegenerateVertex, "point coincides with an endpoint");
  const NormalizedSegment s = normalize_segment(a1, a2, g, alpha);
  const ModelPoint local = apply(s.to_normal, p, g);
  const AngleResult r = evaluate_angle(s.problem, local);
  std::cout << "angle_deg " << fixed(r.angle * 180 / std::numbers::pi, 9) << "\n"
            << "angle_rad " << fixed(r.angle, 12) << "\n"
            << "cos_direct " << fixed(r.cos_direct, 15) << "\n"
            << "cos_closed_form " << fixed(r.cos_closed_form, 15) << "\n"
            << "path_difference " << std::abs(r.cos_direct - r.cos_closed_form) << "\n";
  if (cmd.count("--alpha")) {
    std::cout << "residual " << fixed(std::cos(alpha) - r.cos_closed_form, 15) << "\n";
  }
  return kExitOk;
}

struct ThaloidArgs {
  std::string geometry = "s2xr";
  std::string a;
  std::string out, format = "obj", grid = "64,64,64";
  int threads = 0;
};

int run_thaloid(const ThaloidArgs& t) {
  const GeometryKind g = parse_geometry(t.geometry);
  const double a = parse_reals(t.a, 1, "a").front();
  const SphereSpec sphere = thaloid_sphere(a, g);
  std::cout << "segment (1,1,0,0) - (1," << t.a << ",0,0) in " << to_string(g) << "\n"
            << "center " << fixed(sphere.center.x, 12) << ",0,0\n"
            << "radius " << fixed(sphere.radius, 12) << "\n";
  if (t.out.empty()) return kExitOk;

  ScenarioConfig c;
  c.name = "thaloid";
  c.geometry = g;
  c.a2 = {a, 0, 0};
  c.alpha_degrees = 90;
  c.resolution = parse_resolution(t.grid);
  c.format = parse_format(t.format);
  c.bounds = auto_bounds(sphere.center, sphere.center, g, sphere.radius);
  const IsopticField field = make_field(c);
  const TriangleMesh mesh =
      extract_isosurface(sample_field(grid_spec(c), field, resolve_threads(t.threads)), field);
  double deviation = 0;
  for (const Vec3& v : mesh.vertices) {
    deviation = std::max(deviation,
                         std::abs(distance(sphere.center, ModelPoint::from(v), g) - sphere.radius));
  }
  write_text(t.out, export_mesh(mesh, c.format));
  std::cout << "mesh vertices=" << mesh.vertices.size() << " triangles=" << mesh.triangles.size()
            << " max|d(center,v)-radius|=" << deviation << " -> " << t.out << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Isoptic surfaces of segments in S2xR and H2xR"};
  app.require_subcommand(1);

  DistanceArgs dist;
  auto* distance_cmd = app.add_subcommand("distance", "translation-curve distance");
  distance_cmd->add_option("args", dist.positional, "[s2xr|h2xr] P [Q]; Q defaults to the origin")
      ->required();
  distance_cmd->add_option("--geometry", dist.geometry, "s2xr or h2xr");

  AngleArgs ang;
  auto* angle_cmd = app.add_subcommand("angle", "angle subtended by a segment at a point");
  angle_cmd->add_option("point", ang.point, "vertex x,y,z")->required();
  angle_cmd->add_option("--geometry", ang.geometry, "s2xr or h2xr");
  angle_cmd->add_option("--a1", ang.a1, "first endpoint (default 1,0,0)");
  angle_cmd->add_option("--a2", ang.a2, "second endpoint")->required();
  angle_cmd->add_option("--alpha", ang.alpha, "target angle in degrees; prints the residual");

  RunOptions iso;
  auto* isoptic_cmd = app.add_subcommand("isoptic", "extract an isoptic surface as a mesh");
  add_run_options(isoptic_cmd, iso, true);

  ThaloidArgs th;
  auto* thaloid_cmd = app.add_subcommand("thaloid", "Thaloid sphere of the fibre segment to (1,a,0,0)");
  thaloid_cmd->add_option("a", th.a, "second endpoint x coordinate")->required();
  thaloid_cmd->add_option("--geometry", th.geometry, "s2xr or h2xr");
  thaloid_cmd->add_option("--out", th.out, "also extract and write the mesh");
  thaloid_cmd->add_option("--format", th.format, "obj, ply or csv");
  thaloid_cmd->add_option("--grid", th.grid, "resolution NX,NY,NZ");
  thaloid_cmd->add_option("--threads", th.threads, "worker threads");

  RunOptions smp;
  auto* sample_cmd = app.add_subcommand("sample", "dump the sampled residual grid as CSV");
  add_run_options(sample_cmd, smp, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitDomain;
  }

  try {
    if (*distance_cmd) return run_distance(dist);
    if (*angle_cmd) return run_angle(ang, *angle_cmd);
    if (*isoptic_cmd) return run_isoptic(iso, *isoptic_cmd);
    if (*thaloid_cmd) return run_thaloid(th);
    if (*sample_cmd) return run_sample(smp, *sample_cmd);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  }
  return kExitOk;
}
