#include "rectstokes/elements.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace rectstokes {

namespace {

// Cell-intrinsic frame of local edge i: endpoints, outward normal,
// counterclockwise tangent, and which scaled coordinate weights the
// first-moment dofs.
struct EdgeFrame {
  Vec2 a, b;
  Vec2 n, t;
  bool xi_is_x;
};

EdgeFrame local_edge_frame(const CellGeometry& g, int i) {
  switch (i) {
    case 0: return {{g.x0, g.y0}, {g.x1, g.y0}, {0, -1}, {1, 0}, true};
    case 1: return {{g.x1, g.y0}, {g.x1, g.y1}, {1, 0}, {0, 1}, false};
    case 2: return {{g.x0, g.y1}, {g.x1, g.y1}, {0, 1}, {-1, 0}, true};
    case 3: return {{g.x0, g.y0}, {g.x0, g.y1}, {-1, 0}, {0, -1}, false};
  }
  throw Error(ErrorCode::invalid_argument, "elements: local edge index");
}

using ScalarFn = std::function<double(Vec2)>;
using VecFn = std::function<Vec2(Vec2)>;

// Applies the family's dof set to one field given as callbacks.  Shared
// by the Vandermonde assembly (generators) and user interpolation.
Eigen::VectorXd apply_functionals(const CellGeometry& g, ElementFamily family,
                                  const ScalarFn& value, const VecFn& gradient,
                                  const VecFn& vec, int edge_m, int cell_m) {
  const auto& table = dof_table(family);
  Eigen::VectorXd out(static_cast<int>(table.size()));
  const QuadRule1D q1 = gauss_1d(edge_m);

  const auto edge_integral =
      [&](int local_edge, const std::function<double(Vec2, double)>& f) {
        const EdgeFrame fr = local_edge_frame(g, local_edge);
        const double half_len = 0.5 * std::hypot(fr.b.x - fr.a.x, fr.b.y - fr.a.y);
        double acc = 0.0;
        for (int k = 0; k < q1.size(); ++k) {
          const double t = q1.nodes[k];
          const Vec2 p = {0.5 * (fr.a.x + fr.b.x) + 0.5 * (fr.b.x - fr.a.x) * t,
                          0.5 * (fr.a.y + fr.b.y) + 0.5 * (fr.b.y - fr.a.y) * t};
          const Vec2 s = g.scale(p);
          const double xi = fr.xi_is_x ? s.x : s.y;
          acc += half_len * q1.weights[k] * f(p, xi);
        }
        return acc;
      };

  const auto cell_integral = [&](const std::function<double(Vec2, Vec2)>& f) {
    const QuadRule1D q = gauss_1d(cell_m);
    const double jac = 0.25 * g.hx() * g.hy();
    double acc = 0.0;
    for (int b = 0; b < q.size(); ++b)
      for (int a = 0; a < q.size(); ++a) {
        const Vec2 s = {q.nodes[a], q.nodes[b]};
        acc += jac * q.weights[a] * q.weights[b] * f(g.unscale(s), s);
      }
    return acc;
  };

  const Vec2 corners[4] = {{g.x0, g.y0}, {g.x1, g.y0}, {g.x1, g.y1}, {g.x0, g.y1}};

  for (std::size_t i = 0; i < table.size(); ++i) {
    const DofDescriptor d = table[i];
    double v = 0.0;
    switch (d.kind) {
      case DofKind::vertex_value:
        v = value(corners[d.entity]);
        break;
      case DofKind::vertex_grad_x:
        v = gradient(corners[d.entity]).x;
        break;
      case DofKind::vertex_grad_y:
        v = gradient(corners[d.entity]).y;
        break;
      case DofKind::edge_mean:
        v = edge_integral(d.entity, [&](Vec2 p, double) { return value(p); });
        break;
      case DofKind::edge_normal_deriv_mean: {
        const EdgeFrame fr = local_edge_frame(g, d.entity);
        v = edge_integral(d.entity, [&](Vec2 p, double) {
          const Vec2 gr = gradient(p);
          return gr.x * fr.n.x + gr.y * fr.n.y;
        });
        break;
      }
      case DofKind::edge_normal_mean: {
        const EdgeFrame fr = local_edge_frame(g, d.entity);
        v = edge_integral(d.entity, [&](Vec2 p, double) {
          const Vec2 w = vec(p);
          return w.x * fr.n.x + w.y * fr.n.y;
        });
        break;
      }
      case DofKind::edge_normal_moment: {
        const EdgeFrame fr = local_edge_frame(g, d.entity);
        v = edge_integral(d.entity, [&](Vec2 p, double xi) {
          const Vec2 w = vec(p);
          return (w.x * fr.n.x + w.y * fr.n.y) * xi;
        });
        break;
      }
      case DofKind::edge_tangential_mean: {
        const EdgeFrame fr = local_edge_frame(g, d.entity);
        v = edge_integral(d.entity, [&](Vec2 p, double) {
          const Vec2 w = vec(p);
          return w.x * fr.t.x + w.y * fr.t.y;
        });
        break;
      }
      case DofKind::cell_mean:
        v = cell_integral([&](Vec2 p, Vec2) { return value(p); });
        break;
      case DofKind::cell_moment_x:
        v = cell_integral([&](Vec2 p, Vec2 s) { return value(p) * s.x; });
        break;
      case DofKind::cell_moment_y:
        v = cell_integral([&](Vec2 p, Vec2 s) { return value(p) * s.y; });
        break;
    }
    out(static_cast<int>(i)) = v;
  }
  return out;
}

} // namespace

int dof_count(ElementFamily family) {
  switch (family) {
    case ElementFamily::plate12:
    case ElementFamily::velocity12:
    case ElementFamily::adini:
      return 12;
    case ElementFamily::pressure_p0:
      return 1;
    case ElementFamily::local_p1:
      return 3;
  }
  throw Error(ErrorCode::invalid_argument, "elements: unknown family");
}

int value_components(ElementFamily family) {
  return family == ElementFamily::velocity12 ? 2 : 1;
}

const char* family_name(ElementFamily family) {
  switch (family) {
    case ElementFamily::plate12: return "plate12";
    case ElementFamily::velocity12: return "velocity12";
    case ElementFamily::adini: return "adini";
    case ElementFamily::pressure_p0: return "p0";
    case ElementFamily::local_p1: return "p1";
  }
  return "?";
}

const std::vector<DofDescriptor>& dof_table(ElementFamily family) {
  static const std::vector<DofDescriptor> plate = [] {
    std::vector<DofDescriptor> t;
    for (int i = 0; i < 4; ++i) t.push_back({DofKind::vertex_value, i});
    for (int i = 0; i < 4; ++i) t.push_back({DofKind::edge_mean, i});
    for (int i = 0; i < 4; ++i) t.push_back({DofKind::edge_normal_deriv_mean, i});
    return t;
  }();
  static const std::vector<DofDescriptor> velocity = [] {
    std::vector<DofDescriptor> t;
    for (int i = 0; i < 4; ++i) t.push_back({DofKind::edge_normal_mean, i});
    for (int i = 0; i < 4; ++i) t.push_back({DofKind::edge_normal_moment, i});
    for (int i = 0; i < 4; ++i) t.push_back({DofKind::edge_tangential_mean, i});
    return t;
  }();
  static const std::vector<DofDescriptor> adini = [] {
    std::vector<DofDescriptor> t;
    for (int i = 0; i < 4; ++i) t.push_back({DofKind::vertex_value, i});
    for (int i = 0; i < 4; ++i) t.push_back({DofKind::vertex_grad_x, i});
    for (int i = 0; i < 4; ++i) t.push_back({DofKind::vertex_grad_y, i});
    return t;
  }();
  static const std::vector<DofDescriptor> p0 = {{DofKind::cell_mean, 0}};
  static const std::vector<DofDescriptor> p1 = {{DofKind::cell_mean, 0},
                                                {DofKind::cell_moment_x, 0},
                                                {DofKind::cell_moment_y, 0}};
  switch (family) {
    case ElementFamily::plate12: return plate;
    case ElementFamily::velocity12: return velocity;
    case ElementFamily::adini: return adini;
    case ElementFamily::pressure_p0: return p0;
    case ElementFamily::local_p1: return p1;
  }
  throw Error(ErrorCode::invalid_argument, "elements: unknown family");
}

std::vector<ShapeFunction> shape_generators(ElementFamily family, double hx,
                                            double hy) {
  std::vector<ShapeFunction> gens;
  const auto scalar = [&](int i, int j) {
    ShapeFunction s;
    s.comp[0] = Poly2::monomial(i, j);
    gens.push_back(s);
  };
  switch (family) {
    case ElementFamily::plate12:
    case ElementFamily::adini: {
      scalar(0, 0);
      scalar(1, 0);
      scalar(0, 1);
      scalar(2, 0);
      scalar(1, 1);
      scalar(0, 2);
      scalar(3, 0);
      scalar(2, 1);
      scalar(1, 2);
      scalar(0, 3);
      if (family == ElementFamily::plate12) {
        scalar(4, 0);
        scalar(0, 4);
      } else {
        scalar(3, 1);
        scalar(1, 3);
      }
      break;
    }
    case ElementFamily::velocity12: {
      for (int c = 0; c < 2; ++c)
        for (auto [i, j] : {std::pair{0, 0}, {1, 0}, {0, 1}}) {
          ShapeFunction s;
          s.comp[c] = Poly2::monomial(i, j);
          gens.push_back(s);
        }
      // curl w = (dw/dy, -dw/dx) in physical variables; the scaled-
      // coordinate chain rule brings in the cell extents.
      const std::pair<int, int> pots[] = {{3, 0}, {2, 1}, {1, 2},
                                          {0, 3}, {4, 0}, {0, 4}};
      for (auto [i, j] : pots) {
        const Poly2 w = Poly2::monomial(i, j);
        ShapeFunction s;
        s.comp[0] = w.dy() * (2.0 / hy);
        s.comp[1] = w.dx() * (-2.0 / hx);
        gens.push_back(s);
      }
      break;
    }
    case ElementFamily::pressure_p0:
      scalar(0, 0);
      break;
    case ElementFamily::local_p1:
      scalar(0, 0);
      scalar(1, 0);
      scalar(0, 1);
      break;
  }
  return gens;
}

Eigen::MatrixXd dof_matrix(const Mesh& mesh, int cell, ElementFamily family) {
  const CellGeometry g = cell_geometry(mesh, cell);
  const auto gens = shape_generators(family, g.hx(), g.hy());
  const int n = dof_count(family);
  if (static_cast<int>(gens.size()) != n)
    throw Error(ErrorCode::element_failure,
                "elements: generator/dof count mismatch");

  Eigen::MatrixXd M(n, n);
  for (int j = 0; j < n; ++j) {
    const ShapeFunction& sh = gens[j];
    const Poly2 gx = sh.comp[0].dx();
    const Poly2 gy = sh.comp[0].dy();
    const double sx = 2.0 / g.hx(), sy = 2.0 / g.hy();
    const ScalarFn value = [&](Vec2 p) {
      const Vec2 s = g.scale(p);
      return sh.comp[0](s.x, s.y);
    };
    const VecFn gradient = [&](Vec2 p) -> Vec2 {
      const Vec2 s = g.scale(p);
      return {sx * gx(s.x, s.y), sy * gy(s.x, s.y)};
    };
    const VecFn vec = [&](Vec2 p) -> Vec2 {
      const Vec2 s = g.scale(p);
      return {sh.comp[0](s.x, s.y), sh.comp[1](s.x, s.y)};
    };
    M.col(j) = apply_functionals(g, family, value, gradient, vec, 3, 3);
  }
  return M;
}

ElementBasis nodal_basis(const Mesh& mesh, int cell, ElementFamily family) {
  const CellGeometry g = cell_geometry(mesh, cell);
  ElementBasis basis;
  basis.family = family;
  basis.hx = g.hx();
  basis.hy = g.hy();
  basis.generators = shape_generators(family, basis.hx, basis.hy);

  const Eigen::MatrixXd M = dof_matrix(mesh, cell, family);
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeThinU |
                                                     Eigen::ComputeThinV);
  const double smax = svd.singularValues()(0);
  const double smin = svd.singularValues()(svd.singularValues().size() - 1);
  basis.condition = (smin > 0.0) ? smax / smin : std::numeric_limits<double>::infinity();
  if (!std::isfinite(basis.condition) || basis.condition > 1e12)
    throw Error(ErrorCode::element_failure,
                std::string("elements: singular dof/shape pairing for ") +
                    family_name(family));

  basis.coeff = M.partialPivLu().solve(
      Eigen::MatrixXd::Identity(M.rows(), M.cols()));
  return basis;
}

Eigen::MatrixXd eval_basis(const ElementBasis& basis, const CellGeometry& geom,
                           Vec2 p, int ax, int ay) {
  const int nc = value_components(basis.family);
  const int nd = static_cast<int>(basis.generators.size());
  const Vec2 s = geom.scale(p);
  const double factor =
      std::pow(2.0 / basis.hx, ax) * std::pow(2.0 / basis.hy, ay);

  Eigen::MatrixXd gen_vals(nd, nc);
  for (int k = 0; k < nd; ++k)
    for (int c = 0; c < nc; ++c)
      gen_vals(k, c) = factor * basis.generators[k].comp[c].deriv(ax, ay)(s.x, s.y);

  Eigen::MatrixXd out(nc, nd);
  for (int c = 0; c < nc; ++c)
    out.row(c) = (basis.coeff.transpose() * gen_vals.col(c)).transpose();
  return out;
}

BasisTable tabulate(const ElementBasis& basis, const std::vector<double>& sx,
                    const std::vector<double>& sy, int ax, int ay) {
  if (sx.size() != sy.size())
    throw Error(ErrorCode::invalid_argument, "elements: point list mismatch");
  const int nc = value_components(basis.family);
  const int nd = static_cast<int>(basis.generators.size());
  const int np = static_cast<int>(sx.size());
  const double factor =
      std::pow(2.0 / basis.hx, ax) * std::pow(2.0 / basis.hy, ay);

  BasisTable table;
  table.components = nc;
  table.dofs = nd;
  table.points = np;
  table.data.resize(static_cast<std::size_t>(nc) * nd * np);

  Eigen::MatrixXd gen_vals(nd, np);
  for (int c = 0; c < nc; ++c) {
    for (int k = 0; k < nd; ++k) {
      const Poly2 d = basis.generators[k].comp[c].deriv(ax, ay);
      for (int q = 0; q < np; ++q)
        gen_vals(k, q) = factor * d(sx[q], sy[q]);
    }
    const Eigen::MatrixXd dof_vals = basis.coeff.transpose() * gen_vals;
    for (int j = 0; j < nd; ++j)
      for (int q = 0; q < np; ++q)
        table.data[(static_cast<std::size_t>(c) * nd + j) * np + q] =
            dof_vals(j, q);
  }
  return table;
}

Eigen::VectorXd apply_dofs(const Mesh& mesh, int cell, ElementFamily family,
                           const ScalarFunction& f, int edge_m, int cell_m) {
  if (value_components(family) != 1)
    throw Error(ErrorCode::invalid_argument,
                "elements: scalar field given to a vector family");
  const bool needs_gradient = family == ElementFamily::plate12 ||
                              family == ElementFamily::adini;
  if (!f.value || (needs_gradient && !f.gradient))
    throw Error(ErrorCode::invalid_argument,
                "elements: missing value or gradient callback");
  const CellGeometry g = cell_geometry(mesh, cell);
  return apply_functionals(g, family, f.value, f.gradient, {}, edge_m, cell_m);
}

Eigen::VectorXd apply_dofs(const Mesh& mesh, int cell, ElementFamily family,
                           const VectorFunction& f, int edge_m) {
  if (value_components(family) != 2)
    throw Error(ErrorCode::invalid_argument,
                "elements: vector field given to a scalar family");
  if (!f.value)
    throw Error(ErrorCode::invalid_argument, "elements: missing value callback");
  const CellGeometry g = cell_geometry(mesh, cell);
  return apply_functionals(g, family, {}, {}, f.value, edge_m, 3);
}

} // namespace rectstokes
