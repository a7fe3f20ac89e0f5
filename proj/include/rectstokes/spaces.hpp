#pragma once

#include <Eigen/Sparse>

#include "rectstokes/elements.hpp"

namespace rectstokes {

/// Wh:    plate bending space, dofs on interior vertices and interior
///        edges; boundary dofs are eliminated (clamped conditions).
/// Vh:    velocity space, 3 dofs per interior edge.
/// Ph:    piecewise constants; the coefficient is the cell value and the
///        zero-mean constraint is enforced at solve/projection time.
/// Adini: value and gradient at interior vertices.
enum class Space { Wh, Vh, Ph, Adini };

ElementFamily space_family(Space space);

/// Cell-local to global dof translation with orientation signs.  Global
/// edge dofs are defined against the fixed edge frame (n_E, t_E); the
/// sign is n_K . n_E for the normal-derivative, flux, flux-moment, and
/// tangential kinds, +1 otherwise.  Eliminated (boundary) dofs map to -1.
struct DofMap {
  Space space = Space::Wh;
  int free_count = 0;
  int local_count = 0;
  std::vector<std::array<int, 12>> cell_to_global;
  std::vector<std::array<signed char, 12>> cell_signs;
  std::vector<DofKind> kinds;   // one entry per global dof
  std::vector<int> entities;    // vertex/edge/cell index per global dof
};

DofMap build_dofmap(const Mesh& mesh, Space space);

/// Coefficients over a DofMap; the map must outlive the field.  For
/// pressures the multiplier records the zero-mean Lagrange value from the
/// saddle solve.
struct FEField {
  const DofMap* map = nullptr;
  std::vector<double> coeff;
  double multiplier = 0.0;
};

/// Local coefficient gather: signs applied, eliminated dofs read as 0.
void gather_cell_coeffs(const DofMap& map, const FEField& field, int cell,
                        double* out);

/// Dof interpolants.  Boundary dofs have no slots and are implicitly
/// zero, so these reproduce u only when its boundary dofs vanish.
FEField interpolate_scalar(const Mesh& mesh, const DofMap& map,
                           const ScalarFunction& u, int edge_m = 10);
FEField interpolate_velocity(const Mesh& mesh, const DofMap& map,
                             const VectorFunction& v, int edge_m = 10);

/// Cellwise L2 projection onto constants, then shifted to zero weighted
/// mean.
FEField project_pressure(const Mesh& mesh, const DofMap& map,
                         const std::function<double(Vec2)>& q, int cell_m = 10);

/// Exact dof-level curl: rows are Vh dofs, columns Wh dofs.  Built from
/// the identities curl w . n_E = dw/dt_E (integrates to endpoint values)
/// and curl w . t_E = -dw/dn_E; no quadrature involved.
Eigen::SparseMatrix<double> curl_dof_matrix(const Mesh& mesh, const DofMap& wh,
                                            const DofMap& vh);

/// Per-cell divergence values of Vh fields: row K holds outward signs
/// over the cell's flux dofs divided by the cell area.
Eigen::SparseMatrix<double> divergence_dof_matrix(const Mesh& mesh,
                                                  const DofMap& vh);

/// curl of a Wh field as a Vh field, via the dof-level matrix.
FEField curl_field(const Mesh& mesh, const DofMap& wh, const FEField& w,
                   const DofMap& vh);

/// Derivative (ax,ay) of a field at a point of one cell; y component is
/// zero for scalar spaces.
Vec2 eval_field(const Mesh& mesh, const FEField& field, int cell, Vec2 p,
                int ax = 0, int ay = 0);

} // namespace rectstokes
