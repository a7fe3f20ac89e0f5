#pragma once

#include <Eigen/Sparse>

#include "rectstokes/spaces.hpp"

namespace rectstokes {

/// rel_residual is the normwise backward error |Ax-b|/(|A||x| + |b|) in
/// infinity norms; the solvers guarantee it is at most their tol.
struct SolveReport {
  int unknowns = 0;
  double rel_residual = 0.0;
  double assemble_seconds = 0.0;
  double solve_seconds = 0.0;
};

/// Assembled system plus the exact triplet stream that produced it, in
/// deterministic cell-major order (kept so reproducibility is checkable).
struct SparseSystem {
  Eigen::SparseMatrix<double> matrix;
  Eigen::VectorXd rhs;
  std::vector<Eigen::Triplet<double>> triplets;
};

/// Broken Hessian form sum_K (D^2 u, D^2 v)_K with the full tensor inner
/// product (mixed term twice) and the dof interpolant load.
SparseSystem assemble_biharmonic(const Mesh& mesh, const DofMap& map,
                                 const std::function<double(Vec2)>& load,
                                 int quad_assembly = 5, int quad_load = 10);

/// Saddle system for velocity/pressure with the zero-mean constraint
/// bordered in: [[A, -B^T, 0], [-B, 0, c], [0, c^T, 0]] where A is the
/// broken vector Laplacian, B the divergence pairing, c the cell areas.
/// Unknown order: velocity dofs, cell pressures, multiplier.
SparseSystem assemble_stokes(const Mesh& mesh, const DofMap& vh,
                             const DofMap& ph,
                             const std::function<Vec2(Vec2)>& load,
                             int quad_assembly = 5, int quad_load = 10);

/// Divergence pairing matrix B(K, g) = integral over K of div phi_g.
Eigen::SparseMatrix<double> assemble_divergence_matrix(const Mesh& mesh,
                                                       const DofMap& vh);

/// Direct solve (equilibrated LDLT; the form is symmetric positive
/// definite on the eliminated space) with iterative refinement.  Throws
/// solver_failure if the backward error stays above tol.
FEField solve_biharmonic(const Mesh& mesh, const DofMap& map,
                         const std::function<double(Vec2)>& load,
                         SolveReport* report = nullptr, double tol = 1e-10,
                         int quad_assembly = 5, int quad_load = 10);

struct StokesSolution {
  FEField velocity;
  FEField pressure;
  SolveReport report;
};

/// Sparse LU on the bordered saddle system; the pressure comes back with
/// exactly zero weighted mean and the multiplier stored on the field.
StokesSolution solve_stokes(const Mesh& mesh, const DofMap& vh,
                            const DofMap& ph,
                            const std::function<Vec2(Vec2)>& load,
                            double tol = 1e-10, int quad_assembly = 5,
                            int quad_load = 10);

} // namespace rectstokes
