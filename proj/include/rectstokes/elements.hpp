#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "rectstokes/mesh.hpp"
#include "rectstokes/poly.hpp"
#include "rectstokes/quadrature.hpp"

namespace rectstokes {

/// plate12:     P3 + span{x^4, y^4}, 12 dofs: vertex values, edge means,
///              edge normal-derivative means.
/// velocity12:  [P1]^2 + curl{x^3, x^2 y, x y^2, y^3, x^4, y^4}, 12 dofs:
///              edge normal means, edge normal first moments, edge
///              tangential means.  Divergence is constant per cell.
/// adini:       P3 + span{x^3 y, x y^3}, 12 dofs: value and gradient at
///              the vertices.
/// pressure_p0: constants, dof = cell integral.
/// local_p1:    P1, dofs = cell integral and first moments; used by the
///              pressure postprocessing step.
enum class ElementFamily { plate12, velocity12, adini, pressure_p0, local_p1 };

int dof_count(ElementFamily family);
int value_components(ElementFamily family);
const char* family_name(ElementFamily family);

/// "mean" dofs are unnormalized edge/cell integrals; the name records the
/// entity pairing, not a 1/|E| factor.  Normal and tangential dofs are
/// cell-intrinsic (outward normal, counterclockwise tangent); orientation
/// reconciliation across cells lives in the global DofMap, not here.
enum class DofKind {
  vertex_value,
  vertex_grad_x,
  vertex_grad_y,
  edge_mean,
  edge_normal_deriv_mean,
  edge_normal_mean,
  edge_normal_moment,
  edge_tangential_mean,
  cell_mean,
  cell_moment_x,
  cell_moment_y,
};

struct DofDescriptor {
  DofKind kind;
  int entity; // local vertex or edge index, 0 for cell dofs
};

const std::vector<DofDescriptor>& dof_table(ElementFamily family);

/// Shape function over the scaled cell coordinates in [-1,1]^2; comp[1]
/// is identically zero for scalar families.
struct ShapeFunction {
  Poly2 comp[2];
};

/// Monomial-style generating set for the shape space.  velocity12 curls
/// are taken in physical variables, so its generators depend on the cell
/// extents.
std::vector<ShapeFunction> shape_generators(ElementFamily family, double hx,
                                            double hy);

/// Generalized Vandermonde M(i,j) = dof_i(generator_j).  Edge integrands
/// are polynomials of degree <= 5 along the edge, so the 3-point Gauss
/// rule used here is exact.
Eigen::MatrixXd dof_matrix(const Mesh& mesh, int cell, ElementFamily family);

/// Nodal basis phi_j = sum_k coeff(k,j) generator_k with
/// dof_i(phi_j) = delta_ij.  Depends on (hx, hy) only, so one instance
/// serves every cell of a uniform mesh.
struct ElementBasis {
  ElementFamily family;
  double hx = 0.0, hy = 0.0;
  std::vector<ShapeFunction> generators;
  Eigen::MatrixXd coeff;
  double condition = 0.0;
};

ElementBasis nodal_basis(const Mesh& mesh, int cell, ElementFamily family);

/// Derivative (ax,ay) of every nodal function at one physical point of a
/// congruent cell; result is (components x dofs).
Eigen::MatrixXd eval_basis(const ElementBasis& basis, const CellGeometry& geom,
                           Vec2 p, int ax = 0, int ay = 0);

/// Tabulated derivative values at shared scaled points, reused across all
/// cells of a uniform mesh.  Layout: value(c, j, q).
struct BasisTable {
  int components = 0, dofs = 0, points = 0;
  std::vector<double> data;
  double at(int c, int j, int q) const {
    return data[(static_cast<std::size_t>(c) * dofs + j) * points + q];
  }
};

BasisTable tabulate(const ElementBasis& basis, const std::vector<double>& sx,
                    const std::vector<double>& sy, int ax, int ay);

/// Scalar field with optional gradient; the gradient is required by
/// families with derivative dofs.
struct ScalarFunction {
  std::function<double(Vec2)> value;
  std::function<Vec2(Vec2)> gradient;
};

struct VectorFunction {
  std::function<Vec2(Vec2)> value;
};

/// Local interpolation dofs of a user field on one cell.
Eigen::VectorXd apply_dofs(const Mesh& mesh, int cell, ElementFamily family,
                           const ScalarFunction& f, int edge_m = 10,
                           int cell_m = 10);
Eigen::VectorXd apply_dofs(const Mesh& mesh, int cell, ElementFamily family,
                           const VectorFunction& f, int edge_m = 10);

} // namespace rectstokes
