#include "rectstokes/mesh.hpp"

#include <cmath>
#include <string>

namespace rectstokes {

int Mesh::interior_vertex_count() const {
  return (nx - 1) * (ny - 1);
}

int Mesh::interior_edge_count() const {
  return nx * (ny - 1) + (nx - 1) * ny;
}

Mesh build_uniform_mesh(const Domain& domain, int nx, int ny) {
  if (!(domain.x_max > domain.x_min) || !(domain.y_max > domain.y_min))
    throw Error(ErrorCode::invalid_argument, "mesh: degenerate domain");
  if (nx < 1 || ny < 1)
    throw Error(ErrorCode::invalid_argument,
                "mesh: subdivision counts must be positive, got " +
                    std::to_string(nx) + "x" + std::to_string(ny));

  Mesh m;
  m.domain = domain;
  m.nx = nx;
  m.ny = ny;
  m.hx = domain.width() / nx;
  m.hy = domain.height() / ny;
  m.h = std::sqrt(m.hx * m.hx + m.hy * m.hy);

  const auto vid = [&](int i, int j) { return j * (nx + 1) + i; };

  m.vertices.resize((nx + 1) * (ny + 1));
  m.vertex_boundary.resize(m.vertices.size());
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i <= nx; ++i) {
      m.vertices[vid(i, j)] = {domain.x_min + i * m.hx,
                               domain.y_min + j * m.hy};
      m.vertex_boundary[vid(i, j)] = (i == 0 || i == nx || j == 0 || j == ny);
    }

  // Horizontal edges first (x fastest), then vertical edges.
  const int n_horizontal = nx * (ny + 1);
  m.edges.resize(n_horizontal + (nx + 1) * ny);
  const auto hid = [&](int i, int j) { return j * nx + i; };
  const auto vidg = [&](int i, int j) { return n_horizontal + j * (nx + 1) + i; };
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i < nx; ++i)
      m.edges[hid(i, j)] = {vid(i, j), vid(i + 1, j), EdgeAxis::horizontal,
                            j == 0 || j == ny};
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i <= nx; ++i)
      m.edges[vidg(i, j)] = {vid(i, j), vid(i, j + 1), EdgeAxis::vertical,
                             i == 0 || i == nx};

  m.cells.resize(nx * ny);
  m.cell_edges.resize(nx * ny);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const int c = j * nx + i;
      m.cells[c] = {vid(i, j), vid(i + 1, j), vid(i + 1, j + 1), vid(i, j + 1)};
      m.cell_edges[c] = {hid(i, j), vidg(i + 1, j), hid(i, j + 1), vidg(i, j)};
    }

  return m;
}

CellGeometry cell_geometry(const Mesh& mesh, int cell) {
  if (cell < 0 || cell >= mesh.cell_count())
    throw Error(ErrorCode::invalid_argument,
                "mesh: cell index " + std::to_string(cell) + " out of range");
  CellGeometry g;
  g.v = mesh.cells[cell];
  g.e = mesh.cell_edges[cell];
  const Vec2 lo = mesh.vertices[g.v[0]];
  const Vec2 hi = mesh.vertices[g.v[2]];
  g.x0 = lo.x;
  g.y0 = lo.y;
  g.x1 = hi.x;
  g.y1 = hi.y;
  return g;
}

} // namespace rectstokes
