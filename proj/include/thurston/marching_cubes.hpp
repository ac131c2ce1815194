// SPDX-License-Identifier: Apache-2.0
//
// Marching-cubes case table, generated once from the cube topology instead of
// being transcribed by hand. For each of the 256 sign patterns, every cube
// face contributes oriented segments between its sign-changing edges; the
// segments chain into closed loops that are fan-triangulated. Ambiguous
// faces (diagonal sign pattern) always isolate the negative corners, a rule
// that depends only on the face, so neighbouring cells agree and the result
// is crack-free. Interior ambiguities are not resolved (no asymptotic
// decider). Triangles are wound so their normals point from the negative
// side to the positive side.
#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace thurston::mc {

/// Corner c sits at (c & 1, (c >> 1) & 1, (c >> 2) & 1).
constexpr std::array<int, 3> corner_offset(int c) { return {c & 1, (c >> 1) & 1, (c >> 2) & 1}; }

/// Edges 4*axis + k join corner `edge_corners[e][0]` to the corner one step
/// along `axis`.
struct Edge {
  int c0, c1, axis;
};

constexpr std::array<Edge, 12> make_edges() {
  std::array<Edge, 12> edges{};
  int n = 0;
  for (int axis = 0; axis < 3; ++axis) {
    for (int c = 0; c < 8; ++c) {
      if (c & (1 << axis)) continue;
      edges[n++] = {c, c | (1 << axis), axis};
    }
  }
  return edges;
}

inline constexpr std::array<Edge, 12> kEdges = make_edges();

constexpr int edge_between(int a, int b) {
  for (int e = 0; e < 12; ++e) {
    if ((kEdges[e].c0 == a && kEdges[e].c1 == b) || (kEdges[e].c0 == b && kEdges[e].c1 == a)) {
      return e;
    }
  }
  return -1;
}

using Triangle = std::array<std::int8_t, 3>;

struct CaseTable {
  std::array<std::vector<Triangle>, 256> triangles;
};

namespace detail {

struct P3 {
  double x, y, z;
};

inline P3 edge_midpoint(int e) {
  const auto a = corner_offset(kEdges[e].c0);
  const auto b = corner_offset(kEdges[e].c1);
  return {0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1]), 0.5 * (a[2] + b[2])};
}

inline CaseTable build() {
  CaseTable table;
  for (int mask = 0; mask < 256; ++mask) {
    const auto inside = [mask](int c) { return (mask >> c) & 1; };
    std::array<int, 12> next;
    next.fill(-1);
    auto add_segment = [&](int ea, int eb, std::array<double, 3> normal, P3 ref) {
      const P3 a = edge_midpoint(ea), b = edge_midpoint(eb);
      const P3 d{b.x - a.x, b.y - a.y, b.z - a.z};
      // w = d x n must point toward the negative (inside) corner(s)
      const P3 w{d.y * normal[2] - d.z * normal[1], d.z * normal[0] - d.x * normal[2],
                 d.x * normal[1] - d.y * normal[0]};
      const P3 r{ref.x - 0.5 * (a.x + b.x), ref.y - 0.5 * (a.y + b.y), ref.z - 0.5 * (a.z + b.z)};
      const double s = w.x * r.x + w.y * r.y + w.z * r.z;
      const int from = s > 0 ? ea : eb;
      const int to = s > 0 ? eb : ea;
      if (next[from] != -1) throw std::logic_error("marching cubes: inconsistent orientation");
      next[from] = to;
    };
    for (int axis = 0; axis < 3; ++axis) {
      const int b1 = (axis + 1) % 3, b2 = (axis + 2) % 3;
      for (int side = 0; side < 2; ++side) {
        const int base = side << axis;
        const std::array<int, 4> q{base, base | (1 << b1), base | (1 << b1) | (1 << b2),
                                   base | (1 << b2)};
        std::array<double, 3> normal{0, 0, 0};
        normal[axis] = side ? 1.0 : -1.0;
        std::array<int, 4> crossing{};
        int count = 0;
        for (int k = 0; k < 4; ++k) {
          if (inside(q[k]) != inside(q[(k + 1) % 4])) crossing[count++] = k;
        }
        if (count == 2) {
          P3 ref{0, 0, 0};
          int n_in = 0;
          for (int k = 0; k < 4; ++k) {
            if (!inside(q[k])) continue;
            const auto o = corner_offset(q[k]);
            ref.x += o[0];
            ref.y += o[1];
            ref.z += o[2];
            ++n_in;
          }
          ref = {ref.x / n_in, ref.y / n_in, ref.z / n_in};
          const int ka = crossing[0], kb = crossing[1];
          add_segment(edge_between(q[ka], q[(ka + 1) % 4]), edge_between(q[kb], q[(kb + 1) % 4]),
                      normal, ref);
        } else if (count == 4) {
          for (int k = 0; k < 4; ++k) {
            if (!inside(q[k])) continue;
            const auto o = corner_offset(q[k]);
            add_segment(edge_between(q[(k + 3) % 4], q[k]), edge_between(q[k], q[(k + 1) % 4]),
                        normal, {double(o[0]), double(o[1]), double(o[2])});
          }
        }
      }
    }
    std::array<bool, 12> used{};
    for (int start = 0; start < 12; ++start) {
      if (next[start] == -1 || used[start]) continue;
      std::vector<int> loop;
      for (int e = start; !used[e]; e = next[e]) {
        if (next[e] == -1) throw std::logic_error("marching cubes: open loop");
        used[e] = true;
        loop.push_back(e);
      }
      for (std::size_t i = 1; i + 1 < loop.size(); ++i) {
        table.triangles[mask].push_back({static_cast<std::int8_t>(loop[0]),
                                         static_cast<std::int8_t>(loop[i]),
                                         static_cast<std::int8_t>(loop[i + 1])});
      }
    }
  }
  return table;
}

}  // namespace detail

/// Case index bit c is set when corner c is strictly below the iso level.
inline const CaseTable& case_table() {
  static const CaseTable table = detail::build();
  return table;
}

}  // namespace thurston::mc
