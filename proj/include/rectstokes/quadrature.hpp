#pragma once

#include <vector>

#include "rectstokes/mesh.hpp"

namespace rectstokes {

/// Gauss-Legendre rule on [-1,1], nodes ascending.  Exact for polynomials
/// of degree <= 2m-1.
struct QuadRule1D {
  std::vector<double> nodes, weights;
  int size() const { return static_cast<int>(nodes.size()); }
};

/// Supported point counts: 1 <= m <= 20.
QuadRule1D gauss_1d(int m);

/// Tensor rule at physical points of one cell; weights sum to the area.
struct CellRule {
  std::vector<double> x, y, w;
  int size() const { return static_cast<int>(x.size()); }
};

CellRule cell_rule(const Mesh& mesh, int cell, int mx, int my);

/// Rule at physical points of one edge; weights sum to the length.
struct EdgeRule {
  std::vector<double> x, y, w;
  int size() const { return static_cast<int>(x.size()); }
};

EdgeRule edge_rule(const Mesh& mesh, int edge, int m);

/// Tensor rule over the scaled cell [-1,1]^2; the same point layout
/// serves every cell of a uniform mesh (multiply weights by hx*hy/4).
struct ScaledRule {
  std::vector<double> sx, sy, w;
  int size() const { return static_cast<int>(sx.size()); }
};

ScaledRule scaled_cell_rule(int mx, int my);

} // namespace rectstokes
