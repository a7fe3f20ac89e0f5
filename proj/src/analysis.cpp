#include "rectstokes/analysis.hpp"

#include <Eigen/QR>
#include <Eigen/SparseQR>
#include <cmath>

#include "rectstokes/quadrature.hpp"

namespace rectstokes {

namespace {

int matrix_rank(const Eigen::SparseMatrix<double>& M) {
  if (M.rows() == 0 || M.cols() == 0) return 0;
  // Dense column-pivoted QR while it fits, sparse QR beyond.
  if (static_cast<long>(M.rows()) * M.cols() <= 4000000) {
    const Eigen::MatrixXd D(M);
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(D);
    return static_cast<int>(qr.rank());
  }
  Eigen::SparseMatrix<double> A = M;
  A.makeCompressed();
  Eigen::SparseQR<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> qr;
  qr.compute(A);
  if (qr.info() != Eigen::Success)
    throw Error(ErrorCode::solver_failure, "analysis: rank factorization failed");
  return static_cast<int>(qr.rank());
}

double max_abs(const Eigen::SparseMatrix<double>& M) {
  double m = 0.0;
  for (int k = 0; k < M.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(M, k); it; ++it)
      m = std::max(m, std::abs(it.value()));
  return m;
}

double max_abs_diff(const std::vector<double>& a, const Eigen::VectorXd& b) {
  double m = 0.0;
  for (int i = 0; i < b.size(); ++i)
    m = std::max(m, std::abs(a[static_cast<std::size_t>(i)] - b(i)));
  return m;
}

void check_quad(int quad) {
  if (quad < 1 || quad > 20)
    throw Error(ErrorCode::invalid_argument, "analysis: quadrature order");
}

} // namespace

double broken_error(const Mesh& mesh, const FEField& field,
                    const ScalarCase& exact, int m, int quad) {
  if (!field.map || value_components(space_family(field.map->space)) != 1)
    throw Error(ErrorCode::invalid_argument, "analysis: needs a scalar field");
  if (m < 0 || m > 2)
    throw Error(ErrorCode::invalid_argument, "analysis: seminorm order");
  check_quad(quad);

  const DofMap& map = *field.map;
  const ElementBasis basis = nodal_basis(mesh, 0, space_family(map.space));
  const ScaledRule rule = scaled_cell_rule(quad, quad);
  const double jac = 0.25 * mesh.hx * mesh.hy;
  const int nd = map.local_count;

  std::vector<BasisTable> tabs;
  if (m == 0) {
    tabs.push_back(tabulate(basis, rule.sx, rule.sy, 0, 0));
  } else if (m == 1) {
    tabs.push_back(tabulate(basis, rule.sx, rule.sy, 1, 0));
    tabs.push_back(tabulate(basis, rule.sx, rule.sy, 0, 1));
  } else {
    tabs.push_back(tabulate(basis, rule.sx, rule.sy, 2, 0));
    tabs.push_back(tabulate(basis, rule.sx, rule.sy, 1, 1));
    tabs.push_back(tabulate(basis, rule.sx, rule.sy, 0, 2));
  }

  std::vector<double> local(nd);
  double acc = 0.0;
  for (int c = 0; c < mesh.cell_count(); ++c) {
    const CellGeometry g = cell_geometry(mesh, c);
    gather_cell_coeffs(map, field, c, local.data());
    for (int q = 0; q < rule.size(); ++q) {
      const Vec2 p = g.unscale({rule.sx[q], rule.sy[q]});
      double dh[3] = {0.0, 0.0, 0.0};
      for (std::size_t d = 0; d < tabs.size(); ++d)
        for (int j = 0; j < nd; ++j) dh[d] += local[j] * tabs[d].at(0, j, q);
      const double wq = jac * rule.w[q];
      if (m == 0) {
        const double e = exact.value(p) - dh[0];
        acc += wq * e * e;
      } else if (m == 1) {
        const Vec2 gr = exact.gradient(p);
        const double ex = gr.x - dh[0], ey = gr.y - dh[1];
        acc += wq * (ex * ex + ey * ey);
      } else {
        const std::array<double, 3> H = exact.hessian(p);
        const double exx = H[0] - dh[0], exy = H[1] - dh[1], eyy = H[2] - dh[2];
        acc += wq * (exx * exx + exy * exy + eyy * eyy);
      }
    }
  }
  return std::sqrt(acc);
}

double broken_error(const Mesh& mesh, const FEField& field,
                    const StokesCase& exact, int m, int quad) {
  if (!field.map || field.map->space != Space::Vh)
    throw Error(ErrorCode::invalid_argument, "analysis: needs a velocity field");
  if (m < 0 || m > 1)
    throw Error(ErrorCode::invalid_argument, "analysis: seminorm order");
  check_quad(quad);

  const DofMap& map = *field.map;
  const ElementBasis basis = nodal_basis(mesh, 0, ElementFamily::velocity12);
  const ScaledRule rule = scaled_cell_rule(quad, quad);
  const double jac = 0.25 * mesh.hx * mesh.hy;
  const int nd = map.local_count;

  std::vector<BasisTable> tabs;
  if (m == 0) {
    tabs.push_back(tabulate(basis, rule.sx, rule.sy, 0, 0));
  } else {
    tabs.push_back(tabulate(basis, rule.sx, rule.sy, 1, 0));
    tabs.push_back(tabulate(basis, rule.sx, rule.sy, 0, 1));
  }

  std::vector<double> local(nd);
  double acc = 0.0;
  for (int c = 0; c < mesh.cell_count(); ++c) {
    const CellGeometry g = cell_geometry(mesh, c);
    gather_cell_coeffs(map, field, c, local.data());
    for (int q = 0; q < rule.size(); ++q) {
      const Vec2 p = g.unscale({rule.sx[q], rule.sy[q]});
      const double wq = jac * rule.w[q];
      if (m == 0) {
        double v0 = 0.0, v1 = 0.0;
        for (int j = 0; j < nd; ++j) {
          v0 += local[j] * tabs[0].at(0, j, q);
          v1 += local[j] * tabs[0].at(1, j, q);
        }
        const Vec2 u = exact.velocity(p);
        acc += wq * ((u.x - v0) * (u.x - v0) + (u.y - v1) * (u.y - v1));
      } else {
        double gh[4] = {0.0, 0.0, 0.0, 0.0}; // u1x u1y u2x u2y
        for (int j = 0; j < nd; ++j) {
          gh[0] += local[j] * tabs[0].at(0, j, q);
          gh[1] += local[j] * tabs[1].at(0, j, q);
          gh[2] += local[j] * tabs[0].at(1, j, q);
          gh[3] += local[j] * tabs[1].at(1, j, q);
        }
        const std::array<double, 4> G = exact.velocity_gradient(p);
        for (int k = 0; k < 4; ++k) acc += wq * (G[k] - gh[k]) * (G[k] - gh[k]);
      }
    }
  }
  return std::sqrt(acc);
}

double pressure_error(const Mesh& mesh, const FEField& pressure,
                      const StokesCase& exact, int quad) {
  if (!pressure.map || pressure.map->space != Space::Ph)
    throw Error(ErrorCode::invalid_argument, "analysis: needs a pressure field");
  check_quad(quad);
  const ScaledRule rule = scaled_cell_rule(quad, quad);
  const double jac = 0.25 * mesh.hx * mesh.hy;
  double acc = 0.0;
  for (int c = 0; c < mesh.cell_count(); ++c) {
    const CellGeometry g = cell_geometry(mesh, c);
    const double pc = pressure.coeff[c];
    for (int q = 0; q < rule.size(); ++q) {
      const double e = exact.pressure(g.unscale({rule.sx[q], rule.sy[q]})) - pc;
      acc += jac * rule.w[q] * e * e;
    }
  }
  return std::sqrt(acc);
}

double field_h1_seminorm(const Mesh& mesh, const FEField& field, int quad) {
  check_quad(quad);
  const DofMap& map = *field.map;
  const ElementBasis basis = nodal_basis(mesh, 0, space_family(map.space));
  const int nc = value_components(basis.family);
  const int nd = map.local_count;
  const ScaledRule rule = scaled_cell_rule(quad, quad);
  const double jac = 0.25 * mesh.hx * mesh.hy;
  const BasisTable dx = tabulate(basis, rule.sx, rule.sy, 1, 0);
  const BasisTable dy = tabulate(basis, rule.sx, rule.sy, 0, 1);

  std::vector<double> local(nd);
  double acc = 0.0;
  for (int c = 0; c < mesh.cell_count(); ++c) {
    gather_cell_coeffs(map, field, c, local.data());
    for (int q = 0; q < rule.size(); ++q) {
      const double wq = jac * rule.w[q];
      for (int comp = 0; comp < nc; ++comp) {
        double vx = 0.0, vy = 0.0;
        for (int j = 0; j < nd; ++j) {
          vx += local[j] * dx.at(comp, j, q);
          vy += local[j] * dy.at(comp, j, q);
        }
        acc += wq * (vx * vx + vy * vy);
      }
    }
  }
  return std::sqrt(acc);
}

double divergence_residual(const Mesh& mesh, const FEField& velocity) {
  if (!velocity.map || velocity.map->space != Space::Vh)
    throw Error(ErrorCode::invalid_argument, "analysis: needs a velocity field");
  const DofMap& map = *velocity.map;
  const ElementBasis basis = nodal_basis(mesh, 0, ElementFamily::velocity12);
  const std::vector<double> zero{0.0};
  const BasisTable dx = tabulate(basis, zero, zero, 1, 0);
  const BasisTable dy = tabulate(basis, zero, zero, 0, 1);
  const int nd = map.local_count;

  std::vector<double> local(nd);
  double worst = 0.0;
  for (int c = 0; c < mesh.cell_count(); ++c) {
    gather_cell_coeffs(map, velocity, c, local.data());
    double div = 0.0;
    for (int j = 0; j < nd; ++j)
      div += local[j] * (dx.at(0, j, 0) + dy.at(1, j, 0));
    worst = std::max(worst, std::abs(div));
  }
  return worst;
}

P1Field postprocess_pressure(const Mesh& mesh, const FEField& velocity,
                             const FEField& pressure,
                             const std::function<Vec2(Vec2)>& load, int quad) {
  if (!velocity.map || velocity.map->space != Space::Vh || !pressure.map ||
      pressure.map->space != Space::Ph)
    throw Error(ErrorCode::invalid_argument,
                "analysis: postprocessing needs velocity and pressure");
  if (!load)
    throw Error(ErrorCode::invalid_argument, "analysis: missing load");
  check_quad(quad);

  const DofMap& map = *velocity.map;
  const ElementBasis basis = nodal_basis(mesh, 0, ElementFamily::velocity12);
  const ScaledRule rule = scaled_cell_rule(quad, quad);
  const double jac = 0.25 * mesh.hx * mesh.hy;
  const double area = mesh.hx * mesh.hy;
  const BasisTable dxx = tabulate(basis, rule.sx, rule.sy, 2, 0);
  const BasisTable dyy = tabulate(basis, rule.sx, rule.sy, 0, 2);
  const int nd = map.local_count;

  P1Field out;
  out.cells.resize(mesh.cell_count());
  std::vector<double> local(nd);
  for (int c = 0; c < mesh.cell_count(); ++c) {
    const CellGeometry g = cell_geometry(mesh, c);
    gather_cell_coeffs(map, velocity, c, local.data());
    double mx = 0.0, my = 0.0;
    for (int q = 0; q < rule.size(); ++q) {
      const Vec2 p = g.unscale({rule.sx[q], rule.sy[q]});
      const Vec2 f = load(p);
      double lap0 = 0.0, lap1 = 0.0;
      for (int j = 0; j < nd; ++j) {
        lap0 += local[j] * (dxx.at(0, j, q) + dyy.at(0, j, q));
        lap1 += local[j] * (dxx.at(1, j, q) + dyy.at(1, j, q));
      }
      const double wq = jac * rule.w[q];
      mx += wq * (lap0 + f.x);
      my += wq * (lap1 + f.y);
    }
    out.cells[c] = {pressure.coeff[c], mx / area, my / area};
  }
  return out;
}

double pressure_error(const Mesh& mesh, const P1Field& pstar,
                      const StokesCase& exact, int quad) {
  check_quad(quad);
  const ScaledRule rule = scaled_cell_rule(quad, quad);
  const double jac = 0.25 * mesh.hx * mesh.hy;
  double acc = 0.0;
  for (int c = 0; c < mesh.cell_count(); ++c) {
    const CellGeometry g = cell_geometry(mesh, c);
    const Vec2 ctr = g.center();
    const auto& cell = pstar.cells[c];
    for (int q = 0; q < rule.size(); ++q) {
      const Vec2 p = g.unscale({rule.sx[q], rule.sy[q]});
      const double ph = cell[0] + cell[1] * (p.x - ctr.x) + cell[2] * (p.y - ctr.y);
      const double e = exact.pressure(p) - ph;
      acc += jac * rule.w[q] * e * e;
    }
  }
  return std::sqrt(acc);
}

bool ComplexReport::passed() const {
  return dim_identity_ok && div_rank == div_rank_expected &&
         div_nullity == dim_wh && curl_nullity == 0 && divcurl_defect <= tol &&
         commute_div_defect <= tol && commute_curl_defect <= tol;
}

ComplexReport verify_complex(const Mesh& mesh, double tol, int quad) {
  ComplexReport r;
  r.nx = mesh.nx;
  r.ny = mesh.ny;
  r.tol = tol;

  const DofMap wh = build_dofmap(mesh, Space::Wh);
  const DofMap vh = build_dofmap(mesh, Space::Vh);
  const DofMap ph = build_dofmap(mesh, Space::Ph);
  r.dim_wh = wh.free_count;
  r.dim_vh = vh.free_count;
  r.dim_ph = ph.free_count;
  r.dim_identity_ok = r.dim_wh + (mesh.cell_count() - 1) == r.dim_vh;

  const Eigen::SparseMatrix<double> C = curl_dof_matrix(mesh, wh, vh);
  const Eigen::SparseMatrix<double> D = divergence_dof_matrix(mesh, vh);

  r.div_rank = matrix_rank(D);
  r.div_rank_expected = mesh.cell_count() - 1;
  r.div_nullity = r.dim_vh - r.div_rank;
  r.curl_rank = matrix_rank(C);
  r.curl_nullity = r.dim_wh - r.curl_rank;
  r.divcurl_defect = max_abs(Eigen::SparseMatrix<double>(D * C));

  for (const BatteryField& f : velocity_battery(mesh.domain)) {
    const FEField pi = interpolate_velocity(mesh, vh, f.field, quad);
    const Eigen::Map<const Eigen::VectorXd> pv(
        pi.coeff.data(), static_cast<int>(pi.coeff.size()));
    const Eigen::VectorXd dv = D * pv;
    const FEField pdiv = project_pressure(mesh, ph, f.divergence, quad);
    r.commute_div_defect = std::max(r.commute_div_defect,
                                    max_abs_diff(pdiv.coeff, dv));
  }

  for (const PotentialField& pot : potential_battery(mesh.domain)) {
    const FEField ih = interpolate_scalar(mesh, wh, pot.potential, quad);
    const Eigen::Map<const Eigen::VectorXd> iv(
        ih.coeff.data(), static_cast<int>(ih.coeff.size()));
    const Eigen::VectorXd lhs = C * iv;
    const auto grad = pot.potential.gradient;
    const VectorFunction curl{[grad](Vec2 p) -> Vec2 {
      const Vec2 g = grad(p);
      return {g.y, -g.x};
    }};
    const FEField rhs = interpolate_velocity(mesh, vh, curl, quad);
    r.commute_curl_defect = std::max(r.commute_curl_defect,
                                     max_abs_diff(rhs.coeff, lhs));
  }
  return r;
}

} // namespace rectstokes
