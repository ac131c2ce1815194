// SPDX-License-Identifier: Apache-2.0
//
// Sampling of scalar fields on regular grids, zero-level-set extraction, and
// mesh/grid export (OBJ, PLY, CSV).
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <tuple>
#include <utility>
#include <vector>

#include "thurston/error.hpp"
#include "thurston/geometry.hpp"
#include "thurston/marching_cubes.hpp"

namespace thurston {

struct Box {
  Vec3 lo, hi;
};

struct GridSpec {
  Box bounds;
  std::array<int, 3> resolution{64, 64, 64};

  void validate() const {
    for (int n : resolution) {
      if (n < 2) throw Error(ErrorCode::InvalidConfig, "grid resolution must be >= 2 per axis");
    }
    if (!(bounds.lo.x < bounds.hi.x && bounds.lo.y < bounds.hi.y && bounds.lo.z < bounds.hi.z)) {
      throw Error(ErrorCode::InvalidConfig, "grid bounds must satisfy min < max on every axis");
    }
  }

  /// Node coordinate along one axis. Written so that refining n - 1 by a
  /// power of two reproduces the coarse coordinates bit for bit.
  static double coordinate(double lo, double hi, int i, int n) {
    return lo + ((hi - lo) * i) / (n - 1);
  }

  Vec3 position(int i, int j, int k) const {
    return {coordinate(bounds.lo.x, bounds.hi.x, i, resolution[0]),
            coordinate(bounds.lo.y, bounds.hi.y, j, resolution[1]),
            coordinate(bounds.lo.z, bounds.hi.z, k, resolution[2])};
  }

  Vec3 cell_size() const {
    return {(bounds.hi.x - bounds.lo.x) / (resolution[0] - 1),
            (bounds.hi.y - bounds.lo.y) / (resolution[1] - 1),
            (bounds.hi.z - bounds.lo.z) / (resolution[2] - 1)};
  }

  double cell_diagonal() const { return norm(cell_size()); }

  std::size_t node_count() const {
    return static_cast<std::size_t>(resolution[0]) * resolution[1] * resolution[2];
  }
};

/// Field values at grid nodes; `valid[n] == 0` marks nodes outside the
/// geometry domain or inside a degeneracy band, whose value is unset.
struct SampleGrid {
  GridSpec spec;
  std::vector<double> values;
  std::vector<std::uint8_t> valid;

  std::size_t index(int i, int j, int k) const {
    return (static_cast<std::size_t>(k) * spec.resolution[1] + j) * spec.resolution[0] + i;
  }
  Vec3 position(int i, int j, int k) const { return spec.position(i, j, k); }
};

inline int default_thread_count() {
  const unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : static_cast<int>(n);
}

/// Evaluates `field` (Vec3 -> std::optional<double>) at every node. Work is
/// split into z-slabs; each node is written by exactly one thread, so the
/// result does not depend on `threads`.
template <class Field>
SampleGrid sample_field(const GridSpec& spec, const Field& field, int threads = 1) {
  spec.validate();
  SampleGrid grid;
  grid.spec = spec;
  grid.values.assign(spec.node_count(), 0.0);
  grid.valid.assign(spec.node_count(), 0);
  const int nz = spec.resolution[2];
  threads = std::clamp(threads, 1, nz);

  auto work = [&](int k_begin, int k_end) {
    for (int k = k_begin; k < k_end; ++k) {
      for (int j = 0; j < spec.resolution[1]; ++j) {
        for (int i = 0; i < spec.resolution[0]; ++i) {
          const std::optional<double> v = field(spec.position(i, j, k));
          if (v && std::isfinite(*v)) {
            const std::size_t n = grid.index(i, j, k);
            grid.values[n] = *v;
            grid.valid[n] = 1;
          }
        }
      }
    }
  };

  if (threads == 1) {
    work(0, nz);
  } else {
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
      const int begin = nz * t / threads, end = nz * (t + 1) / threads;
      pool.emplace_back([&, t, begin, end] {
        try {
          work(begin, end);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  if (std::find(grid.valid.begin(), grid.valid.end(), 1) == grid.valid.end()) {
    throw Error(ErrorCode::EmptyDomain, "no grid node lies in the valid domain");
  }
  return grid;
}

struct TriangleMesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 3>> triangles;
  std::vector<double> residuals;  ///< field value at each vertex

  bool empty() const { return triangles.empty(); }

  double max_abs_residual() const {
    double m = 0;
    for (double r : residuals) m = std::max(m, std::abs(r));
    return m;
  }
};

struct ExtractOptions {
  bool refine = true;
  /// Bracketed false-position (Illinois) steps on each crossing edge.
  int max_refine_iterations = 60;
  /// With refinement on, an edge whose residual cannot be driven below this
  /// (or where the field is undefined between the two nodes) straddles a
  /// jump of the field rather than a zero; cells using it are dropped.
  double discontinuity_tolerance = 1e-6;
};

namespace detail {

/// Root of `field` on the segment [a, b] given opposite-signed end values.
/// Returns the parameter in [0, 1] with the smallest evaluated |value|.
template <class Field>
std::pair<double, std::optional<double>> refine_on_edge(const Field& field, Vec3 a, Vec3 b,
                                                        double fa, double fb, int iterations) {
  double lo = 0, hi = 1, flo = fa, fhi = fb;
  double best_s = fa / (fa - fb);
  std::optional<double> best_f = field(a + best_s * (b - a));
  if (!best_f) return {best_s, std::nullopt};
  int side = 0;
  for (int it = 0; it < iterations; ++it) {
    if (std::abs(*best_f) < 1e-15 || hi - lo < 1e-15) break;
    const double s = std::clamp((lo * fhi - hi * flo) / (fhi - flo), lo, hi);
    const std::optional<double> fs = field(a + s * (b - a));
    if (!fs) break;
    if (std::abs(*fs) < std::abs(*best_f)) {
      best_s = s;
      best_f = fs;
    }
    if ((*fs < 0) == (flo < 0)) {
      lo = s;
      flo = *fs;
      if (side == -1) fhi *= 0.5;
      side = -1;
    } else {
      hi = s;
      fhi = *fs;
      if (side == 1) flo *= 0.5;
      side = 1;
    }
  }
  return {best_s, best_f};
}

}  // namespace detail

/// Marching cubes on the zero level set of `grid`. Cells with any invalid
/// corner are skipped. Vertices on shared edges are shared, so the mesh is
/// closed wherever the surface stays inside the valid part of the box.
/// `field` is the exact residual (Vec3 -> std::optional<double>) used for
/// vertex refinement and for the reported per-vertex residuals.
template <class Field>
TriangleMesh extract_isosurface(const SampleGrid& grid, const Field& field,
                                const ExtractOptions& options = {}) {
  const auto& table = mc::case_table();
  const auto& res = grid.spec.resolution;
  TriangleMesh mesh;
  std::vector<int> edge_vertex(grid.values.size() * 3, -1);

  // Slot values: -1 not yet computed, -2 rejected edge, >= 0 vertex index.
  auto vertex_on = [&](int i, int j, int k, int local_edge) {
    const mc::Edge& e = mc::kEdges[local_edge];
    const auto o0 = mc::corner_offset(e.c0);
    const auto o1 = mc::corner_offset(e.c1);
    const std::size_t n0 = grid.index(i + o0[0], j + o0[1], k + o0[2]);
    const std::size_t n1 = grid.index(i + o1[0], j + o1[1], k + o1[2]);
    int& slot = edge_vertex[n0 * 3 + e.axis];
    if (slot != -1) return slot;
    const Vec3 p0 = grid.position(i + o0[0], j + o0[1], k + o0[2]);
    const Vec3 p1 = grid.position(i + o1[0], j + o1[1], k + o1[2]);
    const double f0 = grid.values[n0], f1 = grid.values[n1];
    double s = f0 / (f0 - f1);
    std::optional<double> r;
    if (options.refine) {
      std::tie(s, r) = detail::refine_on_edge(field, p0, p1, f0, f1, options.max_refine_iterations);
      if (!r || std::abs(*r) > options.discontinuity_tolerance) {
        slot = -2;
        return slot;
      }
    } else {
      r = field(p0 + s * (p1 - p0));
    }
    slot = static_cast<int>(mesh.vertices.size());
    mesh.vertices.push_back(p0 + s * (p1 - p0));
    // An edge point the field cannot evaluate keeps the end-value bound.
    mesh.residuals.push_back(r ? *r : std::max(std::abs(f0), std::abs(f1)));
    return slot;
  };

  for (int k = 0; k + 1 < res[2]; ++k) {
    for (int j = 0; j + 1 < res[1]; ++j) {
      for (int i = 0; i + 1 < res[0]; ++i) {
        int mask = 0;
        bool usable = true;
        for (int c = 0; c < 8 && usable; ++c) {
          const auto o = mc::corner_offset(c);
          const std::size_t n = grid.index(i + o[0], j + o[1], k + o[2]);
          if (!grid.valid[n]) usable = false;
          else if (grid.values[n] < 0.0) mask |= 1 << c;
        }
        if (!usable || mask == 0 || mask == 255) continue;
        const auto& tris = table.triangles[mask];
        std::array<int, 12> local;
        local.fill(-1);
        bool rejected = false;
        for (const mc::Triangle& t : tris) {
          for (int e : t) {
            if (local[e] == -1) local[e] = vertex_on(i, j, k, e);
            rejected = rejected || local[e] == -2;
          }
        }
        if (rejected) continue;
        for (const mc::Triangle& t : tris) mesh.triangles.push_back({local[t[0]], local[t[1]], local[t[2]]});
      }
    }
  }
  // Rejected edges may leave vertices no triangle uses; compact them away.
  std::vector<int> remap(mesh.vertices.size(), -1);
  for (const auto& t : mesh.triangles) {
    for (int v : t) remap[v] = 0;
  }
  int next = 0;
  for (int& r : remap) {
    if (r == 0) r = next++;
  }
  if (next != static_cast<int>(mesh.vertices.size())) {
    std::vector<Vec3> vertices(next);
    std::vector<double> residuals(next);
    for (std::size_t v = 0; v < remap.size(); ++v) {
      if (remap[v] < 0) continue;
      vertices[remap[v]] = mesh.vertices[v];
      residuals[remap[v]] = mesh.residuals[v];
    }
    mesh.vertices = std::move(vertices);
    mesh.residuals = std::move(residuals);
    for (auto& t : mesh.triangles) {
      for (int& v : t) v = remap[v];
    }
  }
  if (mesh.empty()) throw Error(ErrorCode::EmptyMesh, "the field has no zero crossing on valid cells");
  return mesh;
}

enum class ExportFormat { Obj, Ply, Csv };

inline const char* to_string(ExportFormat f) {
  switch (f) {
    case ExportFormat::Obj: return "obj";
    case ExportFormat::Ply: return "ply";
    case ExportFormat::Csv: return "csv";
  }
  return "obj";
}

namespace detail {
inline std::string fmt_real(double v, int digits = 17) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}
}  // namespace detail

/// ASCII OBJ, 1-based face indices.
inline void write_obj(std::ostream& os, const TriangleMesh& mesh) {
  if (mesh.empty()) throw Error(ErrorCode::EmptyMesh, "cannot write an empty mesh");
  os << "# thurston-isoptics mesh: " << mesh.vertices.size() << " vertices, "
     << mesh.triangles.size() << " triangles\n";
  for (const Vec3& v : mesh.vertices) {
    os << "v " << detail::fmt_real(v.x) << ' ' << detail::fmt_real(v.y) << ' '
       << detail::fmt_real(v.z) << '\n';
  }
  for (const auto& t : mesh.triangles) {
    os << "f " << t[0] + 1 << ' ' << t[1] + 1 << ' ' << t[2] + 1 << '\n';
  }
}

/// ASCII PLY with a per-vertex residual property.
inline void write_ply(std::ostream& os, const TriangleMesh& mesh) {
  if (mesh.empty()) throw Error(ErrorCode::EmptyMesh, "cannot write an empty mesh");
  os << "ply\nformat ascii 1.0\ncomment thurston-isoptics\n"
     << "element vertex " << mesh.vertices.size() << '\n'
     << "property float x\nproperty float y\nproperty float z\nproperty float residual\n"
     << "element face " << mesh.triangles.size() << '\n'
     << "property list uchar int vertex_indices\nend_header\n";
  for (std::size_t n = 0; n < mesh.vertices.size(); ++n) {
    const Vec3& v = mesh.vertices[n];
    os << detail::fmt_real(v.x, 9) << ' ' << detail::fmt_real(v.y, 9) << ' '
       << detail::fmt_real(v.z, 9) << ' ' << detail::fmt_real(mesh.residuals[n], 9) << '\n';
  }
  for (const auto& t : mesh.triangles) os << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
}

/// Vertex list as CSV: x,y,z,residual.
inline void write_mesh_csv(std::ostream& os, const TriangleMesh& mesh) {
  os << "x,y,z,residual\n";
  for (std::size_t n = 0; n < mesh.vertices.size(); ++n) {
    const Vec3& v = mesh.vertices[n];
    os << detail::fmt_real(v.x) << ',' << detail::fmt_real(v.y) << ',' << detail::fmt_real(v.z)
       << ',' << detail::fmt_real(mesh.residuals[n]) << '\n';
  }
}

/// Grid dump as CSV: x,y,z,residual,valid; x varies fastest. Invalid nodes
/// leave the residual column empty.
inline void write_grid_csv(std::ostream& os, const SampleGrid& grid) {
  os << "x,y,z,residual,valid\n";
  const auto& r = grid.spec.resolution;
  for (int k = 0; k < r[2]; ++k) {
    for (int j = 0; j < r[1]; ++j) {
      for (int i = 0; i < r[0]; ++i) {
        const Vec3 p = grid.position(i, j, k);
        const std::size_t n = grid.index(i, j, k);
        os << detail::fmt_real(p.x) << ',' << detail::fmt_real(p.y) << ','
           << detail::fmt_real(p.z) << ',';
        if (grid.valid[n]) os << detail::fmt_real(grid.values[n]) << ",1\n";
        else os << ",0\n";
      }
    }
  }
}

inline std::string export_mesh(const TriangleMesh& mesh, ExportFormat format) {
  std::ostringstream os;
  switch (format) {
    case ExportFormat::Obj: write_obj(os, mesh); break;
    case ExportFormat::Ply: write_ply(os, mesh); break;
    case ExportFormat::Csv: write_mesh_csv(os, mesh); break;
  }
  return os.str();
}

}  // namespace thurston
