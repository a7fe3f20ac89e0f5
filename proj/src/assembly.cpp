#include "rectstokes/assembly.hpp"

#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>

#include "rectstokes/quadrature.hpp"

namespace rectstokes {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

double inf_norm(const Eigen::SparseMatrix<double>& A) {
  Eigen::VectorXd row_sums = Eigen::VectorXd::Zero(A.rows());
  for (int k = 0; k < A.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(A, k); it; ++it)
      row_sums(it.row()) += std::abs(it.value());
  return row_sums.size() == 0 ? 0.0 : row_sums.maxCoeff();
}

// Normwise backward error |Ax-b| / (|A||x| + |b|) in infinity norms: the
// smallest relative perturbation of (A, b) that x solves exactly.  Unlike
// |Ax-b|/|b| its attainable floor is machine epsilon independent of
// cond(A), so a fixed 1e-10 contract stays meaningful on fine meshes.
double relative_residual(const Eigen::SparseMatrix<double>& A,
                         const Eigen::VectorXd& x, const Eigen::VectorXd& b) {
  const Eigen::VectorXd r = A * x - b;
  const double denom = inf_norm(A) * x.lpNorm<Eigen::Infinity>() +
                       b.lpNorm<Eigen::Infinity>();
  if (denom == 0.0)
    return r.lpNorm<Eigen::Infinity>() == 0.0
               ? 0.0
               : std::numeric_limits<double>::infinity();
  return r.lpNorm<Eigen::Infinity>() / denom;
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

// Symmetric diagonal equilibration wrapped around LDLT.  The plate dofs
// mix point values with edge integrals, so the raw diagonal spans several
// orders of magnitude; scaling by 1/sqrt(diag) keeps the factorization
// accurate enough for refinement to converge on fine meshes.
struct EquilibratedLDLT {
  Eigen::VectorXd d;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> fact;

  void compute(const Eigen::SparseMatrix<double>& A) {
    const Eigen::VectorXd diag = A.diagonal();
    d.resize(diag.size());
    for (Eigen::Index i = 0; i < diag.size(); ++i)
      d(i) = diag(i) > 0.0 ? 1.0 / std::sqrt(diag(i)) : 1.0;
    const Eigen::SparseMatrix<double> scaled =
        d.asDiagonal() * A * d.asDiagonal();
    fact.compute(scaled);
  }
  Eigen::ComputationInfo info() const { return fact.info(); }
  Eigen::VectorXd solve(const Eigen::VectorXd& r) const {
    return d.asDiagonal() * fact.solve((d.asDiagonal() * r).eval());
  }
};

// Iterative refinement until the residual contract holds or progress
// stalls; a backward-stable factorization contracts the residual by
// roughly cond(A)*eps per pass.
template <class Solver>
Eigen::VectorXd refined_solve(const Solver& solver,
                              const Eigen::SparseMatrix<double>& A,
                              const Eigen::VectorXd& b, double tol,
                              const char* what, double* rel_out) {
  Eigen::VectorXd x = solver.solve(b);
  double rel = relative_residual(A, x, b);
  for (int pass = 0; pass < 8 && !(rel <= tol); ++pass) {
    const Eigen::VectorXd xn = x + solver.solve(b - A * x);
    const double reln = relative_residual(A, xn, b);
    if (!(reln < rel)) break;
    x = xn;
    rel = reln;
  }
  if (!(rel <= tol))
    throw Error(ErrorCode::solver_failure,
                std::string("assembly: ") + what + " residual " + sci(rel) +
                    " above tolerance " + sci(tol));
  *rel_out = rel;
  return x;
}

} // namespace

SparseSystem assemble_biharmonic(const Mesh& mesh, const DofMap& map,
                                 const std::function<double(Vec2)>& load,
                                 int quad_assembly, int quad_load) {
  if (map.space != Space::Wh && map.space != Space::Adini)
    throw Error(ErrorCode::invalid_argument,
                "assembly: plate form needs Wh or Adini");
  if (!load)
    throw Error(ErrorCode::invalid_argument, "assembly: missing load");

  const ElementFamily family = space_family(map.space);
  const ElementBasis basis = nodal_basis(mesh, 0, family);
  const int nd = map.local_count;
  const double jac = 0.25 * mesh.hx * mesh.hy;

  // One local stiffness serves all cells: congruent geometry.
  const ScaledRule qa = scaled_cell_rule(quad_assembly, quad_assembly);
  const BasisTable dxx = tabulate(basis, qa.sx, qa.sy, 2, 0);
  const BasisTable dxy = tabulate(basis, qa.sx, qa.sy, 1, 1);
  const BasisTable dyy = tabulate(basis, qa.sx, qa.sy, 0, 2);
  Eigen::MatrixXd S = Eigen::MatrixXd::Zero(nd, nd);
  for (int q = 0; q < qa.size(); ++q) {
    const double wq = jac * qa.w[q];
    for (int i = 0; i < nd; ++i)
      for (int j = 0; j < nd; ++j)
        S(i, j) += wq * (dxx.at(0, i, q) * dxx.at(0, j, q) +
                         2.0 * dxy.at(0, i, q) * dxy.at(0, j, q) +
                         dyy.at(0, i, q) * dyy.at(0, j, q));
  }

  const ScaledRule ql = scaled_cell_rule(quad_load, quad_load);
  const BasisTable vals = tabulate(basis, ql.sx, ql.sy, 0, 0);

  SparseSystem sys;
  sys.rhs = Eigen::VectorXd::Zero(map.free_count);
  sys.triplets.reserve(static_cast<std::size_t>(mesh.cell_count()) * nd * nd);

  Eigen::VectorXd bloc(nd);
  for (int c = 0; c < mesh.cell_count(); ++c) {
    const CellGeometry g = cell_geometry(mesh, c);
    bloc.setZero();
    for (int q = 0; q < ql.size(); ++q) {
      const Vec2 p = g.unscale({ql.sx[q], ql.sy[q]});
      const double fw = jac * ql.w[q] * load(p);
      for (int i = 0; i < nd; ++i) bloc(i) += fw * vals.at(0, i, q);
    }
    const auto& gids = map.cell_to_global[c];
    const auto& signs = map.cell_signs[c];
    for (int i = 0; i < nd; ++i) {
      if (gids[i] < 0) continue;
      sys.rhs(gids[i]) += signs[i] * bloc(i);
      for (int j = 0; j < nd; ++j)
        if (gids[j] >= 0)
          sys.triplets.emplace_back(gids[i], gids[j],
                                    signs[i] * signs[j] * S(i, j));
    }
  }

  sys.matrix.resize(map.free_count, map.free_count);
  sys.matrix.setFromTriplets(sys.triplets.begin(), sys.triplets.end());
  return sys;
}

Eigen::SparseMatrix<double> assemble_divergence_matrix(const Mesh& mesh,
                                                       const DofMap& vh) {
  const Eigen::SparseMatrix<double> D = divergence_dof_matrix(mesh, vh);
  return mesh.hx * mesh.hy * D;
}

SparseSystem assemble_stokes(const Mesh& mesh, const DofMap& vh,
                             const DofMap& ph,
                             const std::function<Vec2(Vec2)>& load,
                             int quad_assembly, int quad_load) {
  if (vh.space != Space::Vh || ph.space != Space::Ph)
    throw Error(ErrorCode::invalid_argument, "assembly: needs Vh and Ph maps");
  if (!load)
    throw Error(ErrorCode::invalid_argument, "assembly: missing load");

  const ElementBasis basis = nodal_basis(mesh, 0, ElementFamily::velocity12);
  const int nd = vh.local_count;
  const int nv = vh.free_count;
  const int nc = ph.free_count;
  const double jac = 0.25 * mesh.hx * mesh.hy;
  const double area = mesh.hx * mesh.hy;

  const ScaledRule qa = scaled_cell_rule(quad_assembly, quad_assembly);
  const BasisTable dx = tabulate(basis, qa.sx, qa.sy, 1, 0);
  const BasisTable dy = tabulate(basis, qa.sx, qa.sy, 0, 1);
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(nd, nd);
  for (int q = 0; q < qa.size(); ++q) {
    const double wq = jac * qa.w[q];
    for (int i = 0; i < nd; ++i)
      for (int j = 0; j < nd; ++j) {
        double acc = 0.0;
        for (int comp = 0; comp < 2; ++comp)
          acc += dx.at(comp, i, q) * dx.at(comp, j, q) +
                 dy.at(comp, i, q) * dy.at(comp, j, q);
        A(i, j) += wq * acc;
      }
  }

  // div phi_j is constant on the cell; one point pins it down.
  const std::vector<double> zero{0.0};
  const BasisTable cdx = tabulate(basis, zero, zero, 1, 0);
  const BasisTable cdy = tabulate(basis, zero, zero, 0, 1);
  Eigen::VectorXd div_int(nd);
  for (int j = 0; j < nd; ++j)
    div_int(j) = (cdx.at(0, j, 0) + cdy.at(1, j, 0)) * area;

  const ScaledRule ql = scaled_cell_rule(quad_load, quad_load);
  const BasisTable vals = tabulate(basis, ql.sx, ql.sy, 0, 0);

  SparseSystem sys;
  const int total = nv + nc + 1;
  sys.rhs = Eigen::VectorXd::Zero(total);
  sys.triplets.reserve(static_cast<std::size_t>(mesh.cell_count()) *
                           (nd * nd + 4 * nd) +
                       2 * nc);

  Eigen::VectorXd bloc(nd);
  for (int c = 0; c < mesh.cell_count(); ++c) {
    const CellGeometry g = cell_geometry(mesh, c);
    bloc.setZero();
    for (int q = 0; q < ql.size(); ++q) {
      const Vec2 p = g.unscale({ql.sx[q], ql.sy[q]});
      const Vec2 f = load(p);
      const double wq = jac * ql.w[q];
      for (int i = 0; i < nd; ++i)
        bloc(i) += wq * (f.x * vals.at(0, i, q) + f.y * vals.at(1, i, q));
    }
    const auto& gids = vh.cell_to_global[c];
    const auto& signs = vh.cell_signs[c];
    for (int i = 0; i < nd; ++i) {
      if (gids[i] < 0) continue;
      sys.rhs(gids[i]) += signs[i] * bloc(i);
      for (int j = 0; j < nd; ++j)
        if (gids[j] >= 0)
          sys.triplets.emplace_back(gids[i], gids[j],
                                    signs[i] * signs[j] * A(i, j));
      const double bv = signs[i] * div_int(i);
      if (bv != 0.0) {
        sys.triplets.emplace_back(gids[i], nv + c, -bv);
        sys.triplets.emplace_back(nv + c, gids[i], -bv);
      }
    }
    sys.triplets.emplace_back(nv + c, nv + nc, area);
    sys.triplets.emplace_back(nv + nc, nv + c, area);
  }

  sys.matrix.resize(total, total);
  sys.matrix.setFromTriplets(sys.triplets.begin(), sys.triplets.end());
  return sys;
}

FEField solve_biharmonic(const Mesh& mesh, const DofMap& map,
                         const std::function<double(Vec2)>& load,
                         SolveReport* report, double tol, int quad_assembly,
                         int quad_load) {
  const auto t0 = std::chrono::steady_clock::now();
  SparseSystem sys = assemble_biharmonic(mesh, map, load, quad_assembly, quad_load);
  const double t_assemble = seconds_since(t0);

  const auto t1 = std::chrono::steady_clock::now();
  EquilibratedLDLT solver;
  solver.compute(sys.matrix);
  if (solver.info() != Eigen::Success)
    throw Error(ErrorCode::solver_failure,
                "assembly: plate system factorization failed");
  double rel = 0.0;
  const Eigen::VectorXd x =
      refined_solve(solver, sys.matrix, sys.rhs, tol, "plate solve", &rel);

  if (report) {
    report->unknowns = map.free_count;
    report->rel_residual = rel;
    report->assemble_seconds = t_assemble;
    report->solve_seconds = seconds_since(t1);
  }

  FEField f;
  f.map = &map;
  f.coeff.assign(x.data(), x.data() + x.size());
  return f;
}

StokesSolution solve_stokes(const Mesh& mesh, const DofMap& vh,
                            const DofMap& ph,
                            const std::function<Vec2(Vec2)>& load, double tol,
                            int quad_assembly, int quad_load) {
  const auto t0 = std::chrono::steady_clock::now();
  SparseSystem sys = assemble_stokes(mesh, vh, ph, load, quad_assembly, quad_load);
  const double t_assemble = seconds_since(t0);

  const auto t1 = std::chrono::steady_clock::now();
  Eigen::SparseLU<Eigen::SparseMatrix<double>> solver;
  solver.compute(sys.matrix);
  if (solver.info() != Eigen::Success)
    throw Error(ErrorCode::solver_failure,
                "assembly: saddle system factorization failed");
  double rel = 0.0;
  const Eigen::VectorXd x =
      refined_solve(solver, sys.matrix, sys.rhs, tol, "saddle solve", &rel);

  const int nv = vh.free_count;
  const int nc = ph.free_count;
  StokesSolution sol;
  sol.velocity.map = &vh;
  sol.velocity.coeff.assign(x.data(), x.data() + nv);
  sol.pressure.map = &ph;
  sol.pressure.coeff.assign(x.data() + nv, x.data() + nv + nc);
  sol.pressure.multiplier = x(nv + nc);

  // The multiplier already enforces this up to roundoff; make it exact.
  // Cells share one area, so the weighted mean is the plain mean.
  double mean = 0.0;
  for (double v : sol.pressure.coeff) mean += v;
  mean /= nc;
  for (double& v : sol.pressure.coeff) v -= mean;

  sol.report.unknowns = nv + nc;
  sol.report.rel_residual = rel;
  sol.report.assemble_seconds = t_assemble;
  sol.report.solve_seconds = seconds_since(t1);
  return sol;
}

} // namespace rectstokes
