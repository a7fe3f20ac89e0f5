#pragma once

#include <array>
#include <vector>

#include "rectstokes/error.hpp"

namespace rectstokes {

struct Vec2 {
  double x = 0.0, y = 0.0;
};

struct Domain {
  double x_min = 0.0, x_max = 2.0;
  double y_min = 0.0, y_max = 1.0;
  double width() const { return x_max - x_min; }
  double height() const { return y_max - y_min; }
};

enum class EdgeAxis : unsigned char { horizontal, vertical };

/// Edge endpoints follow grid order: horizontal edges run +x (v0 left),
/// vertical edges run +y (v0 below).
struct Edge {
  int v0 = -1, v1 = -1;
  EdgeAxis axis = EdgeAxis::horizontal;
  bool boundary = false;
};

/// Uniform rectangular partition of an axis-aligned domain.  All numbering
/// is row-major with x fastest: vertices, cells, and edges (horizontal
/// block first, then vertical) are deterministic functions of (nx, ny).
///
/// Per cell, vertices V1..V4 run counterclockwise from the lower-left
/// corner and edges E1..E4 are bottom, right, top, left.  Every edge also
/// carries a fixed global frame: unit normal n_E = +x (vertical edges) or
/// +y (horizontal edges) and tangent t_E = rotate90(n_E).
struct Mesh {
  Domain domain;
  int nx = 0, ny = 0;
  double hx = 0.0, hy = 0.0;
  double h = 0.0; // cell diagonal, the mesh size used for rate reporting

  std::vector<Vec2> vertices;
  std::vector<bool> vertex_boundary;
  std::vector<Edge> edges;
  std::vector<std::array<int, 4>> cells;      // V1..V4
  std::vector<std::array<int, 4>> cell_edges; // E1..E4

  int vertex_count() const { return static_cast<int>(vertices.size()); }
  int edge_count() const { return static_cast<int>(edges.size()); }
  int cell_count() const { return static_cast<int>(cells.size()); }
  int interior_vertex_count() const;
  int interior_edge_count() const;

  /// Sign of the cell-outward normal on local edge i against the fixed
  /// global frame n_E: bottom and left edges point against it.
  static int outward_sign(int local_edge) {
    constexpr std::array<int, 4> s = {-1, +1, +1, -1};
    return s[local_edge];
  }

  static EdgeAxis local_edge_axis(int local_edge) {
    return (local_edge % 2 == 0) ? EdgeAxis::horizontal : EdgeAxis::vertical;
  }

  double edge_length(int e) const {
    return edges[e].axis == EdgeAxis::horizontal ? hx : hy;
  }
  Vec2 edge_normal(int e) const {
    return edges[e].axis == EdgeAxis::horizontal ? Vec2{0.0, 1.0}
                                                 : Vec2{1.0, 0.0};
  }
  Vec2 edge_tangent(int e) const {
    // rotate90(n) = (-n.y, n.x)
    return edges[e].axis == EdgeAxis::horizontal ? Vec2{-1.0, 0.0}
                                                 : Vec2{0.0, 1.0};
  }
};

/// Axis-aligned bounding box of one cell plus its incident entity indices.
struct CellGeometry {
  double x0 = 0.0, x1 = 0.0, y0 = 0.0, y1 = 0.0;
  std::array<int, 4> v{};
  std::array<int, 4> e{};
  double hx() const { return x1 - x0; }
  double hy() const { return y1 - y0; }
  Vec2 center() const { return {0.5 * (x0 + x1), 0.5 * (y0 + y1)}; }
  /// Map to the scaled cell coordinates in [-1,1]^2.
  Vec2 scale(Vec2 p) const {
    return {(2.0 * p.x - x0 - x1) / hx(), (2.0 * p.y - y0 - y1) / hy()};
  }
  Vec2 unscale(Vec2 s) const {
    return {0.5 * (x0 + x1) + 0.5 * hx() * s.x,
            0.5 * (y0 + y1) + 0.5 * hy() * s.y};
  }
};

Mesh build_uniform_mesh(const Domain& domain, int nx, int ny);
CellGeometry cell_geometry(const Mesh& mesh, int cell);

} // namespace rectstokes
