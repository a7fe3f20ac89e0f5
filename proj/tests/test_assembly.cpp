#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "rectstokes/assembly.hpp"
#include "rectstokes/cases.hpp"
#include "rectstokes/quadrature.hpp"

using namespace rectstokes;

namespace {

const Domain kDomain{0.0, 2.0, 0.0, 1.0};

Eigen::MatrixXd dense(const Eigen::SparseMatrix<double>& A) {
  return Eigen::MatrixXd(A);
}

} // namespace

TEST_SUITE("assembly") {

TEST_CASE("zero load solves to the zero field") {
  const Mesh m = build_uniform_mesh(kDomain, 2, 2);
  const DofMap wh = build_dofmap(m, Space::Wh);
  const FEField f = solve_biharmonic(m, wh, [](Vec2) { return 0.0; });
  for (double c : f.coeff) CHECK(c == 0.0);
}

TEST_CASE("plate matrix is symmetric positive definite") {
  const Mesh m = build_uniform_mesh(kDomain, 2, 2);
  const DofMap wh = build_dofmap(m, Space::Wh);
  const SparseSystem sys =
      assemble_biharmonic(m, wh, [](Vec2) { return 1.0; });
  REQUIRE(sys.matrix.rows() == 9);
  const Eigen::MatrixXd A = dense(sys.matrix);
  CHECK((A - A.transpose()).lpNorm<Eigen::Infinity>() == 0.0);
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(A);
  CHECK(eig.eigenvalues().minCoeff() > 0.0);
}

TEST_CASE("matrix and rhs entries agree with direct quadrature") {
  // Global dof 0 is the value at the center vertex of the 2x2 mesh; its
  // local index walks the four cells as V3, V4, V2, V1.
  const Mesh m = build_uniform_mesh(kDomain, 2, 2);
  const DofMap wh = build_dofmap(m, Space::Wh);
  REQUIRE(wh.kinds[0] == DofKind::vertex_value);
  const auto load = [](Vec2 p) { return 1.0 + p.x - 2.0 * p.y; };
  const SparseSystem sys = assemble_biharmonic(m, wh, load);

  const int local_of_cell[4] = {2, 3, 1, 0};
  double diag = 0.0, rhs = 0.0;
  for (int c = 0; c < 4; ++c) {
    const ElementBasis b = nodal_basis(m, c, ElementFamily::plate12);
    const CellGeometry g = cell_geometry(m, c);
    const int j = local_of_cell[c];
    const CellRule r = cell_rule(m, c, 8, 8);
    for (int q = 0; q < r.size(); ++q) {
      const Vec2 p{r.x[q], r.y[q]};
      const double uxx = eval_basis(b, g, p, 2, 0)(0, j);
      const double uxy = eval_basis(b, g, p, 1, 1)(0, j);
      const double uyy = eval_basis(b, g, p, 0, 2)(0, j);
      diag += r.w[q] * (uxx * uxx + 2.0 * uxy * uxy + uyy * uyy);
      rhs += r.w[q] * load(p) * eval_basis(b, g, p)(0, j);
    }
  }
  CHECK(dense(sys.matrix)(0, 0) == doctest::Approx(diag).epsilon(1e-10));
  CHECK(sys.rhs(0) == doctest::Approx(rhs).epsilon(1e-10));
}

TEST_CASE("assembly streams are reproducible bit for bit") {
  const Mesh m = build_uniform_mesh(kDomain, 3, 3);
  const DofMap wh = build_dofmap(m, Space::Wh);
  const auto load = [](Vec2 p) { return std::sin(p.x) * p.y; };
  const SparseSystem a = assemble_biharmonic(m, wh, load);
  const SparseSystem b = assemble_biharmonic(m, wh, load);
  REQUIRE(a.triplets.size() == b.triplets.size());
  for (std::size_t k = 0; k < a.triplets.size(); ++k) {
    CHECK(a.triplets[k].row() == b.triplets[k].row());
    CHECK(a.triplets[k].col() == b.triplets[k].col());
    CHECK(a.triplets[k].value() == b.triplets[k].value());
  }
  CHECK((a.rhs - b.rhs).lpNorm<Eigen::Infinity>() == 0.0);
}

TEST_CASE("divergence pairing matrix has unit fluxes and zero column sums") {
  const Mesh m = build_uniform_mesh(kDomain, 2, 2);
  const DofMap vh = build_dofmap(m, Space::Vh);
  const Eigen::SparseMatrix<double> B = assemble_divergence_matrix(m, vh);
  REQUIRE(B.rows() == 4);
  REQUIRE(B.cols() == 12);
  const Eigen::MatrixXd Bd = dense(B);
  for (int c = 0; c < 4; ++c)
    for (int g = 0; g < 12; ++g) {
      if (vh.kinds[g] == DofKind::edge_normal_mean) {
        const double v = std::abs(Bd(c, g));
        CHECK((v <= 1e-12 || std::abs(v - 1.0) <= 1e-10));
      } else {
        CHECK(std::abs(Bd(c, g)) <= 1e-12);
      }
    }
  // each interior edge contributes with opposite signs to its two cells
  for (int g = 0; g < 12; ++g)
    CHECK(std::abs(Bd.col(g).sum()) <= 1e-14);
  // rank 3 = #cells - 1: the constant pressure is the only null direction
  const Eigen::FullPivLU<Eigen::MatrixXd> lu(Bd);
  CHECK(lu.rank() == 3);
}

TEST_CASE("saddle matrix wires the blocks as documented") {
  const Mesh m = build_uniform_mesh(kDomain, 2, 2);
  const DofMap vh = build_dofmap(m, Space::Vh);
  const DofMap ph = build_dofmap(m, Space::Ph);
  const auto load = [](Vec2 p) -> Vec2 { return {p.y, -p.x}; };
  const SparseSystem sys = assemble_stokes(m, vh, ph, load);
  const int nv = 12, nc = 4;
  REQUIRE(sys.matrix.rows() == nv + nc + 1);
  const Eigen::MatrixXd M = dense(sys.matrix);

  CHECK((M - M.transpose()).lpNorm<Eigen::Infinity>() <= 1e-14);
  const Eigen::MatrixXd A = M.topLeftCorner(nv, nv);
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(A);
  CHECK(eig.eigenvalues().minCoeff() > 0.0);

  const Eigen::MatrixXd B = dense(assemble_divergence_matrix(m, vh));
  CHECK((M.block(nv, 0, nc, nv) + B).lpNorm<Eigen::Infinity>() <= 1e-14);
  CHECK((M.block(0, nv, nv, nc) + B.transpose()).lpNorm<Eigen::Infinity>() <=
        1e-14);

  const double area = m.hx * m.hy;
  for (int c = 0; c < nc; ++c) {
    CHECK(M(nv + c, nv + nc) == doctest::Approx(area));
    CHECK(M(nv + nc, nv + c) == doctest::Approx(area));
  }
  CHECK(M(nv + nc, nv + nc) == 0.0);
  CHECK(M.block(nv, nv, nc, nc).lpNorm<Eigen::Infinity>() == 0.0);

  // the bordered matrix is nonsingular even though A alone pairs with a
  // rank-deficient B
  const Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
  CHECK(lu.isInvertible());
}

TEST_CASE("manufactured stokes solve meets the residual contract") {
  const Mesh m = build_uniform_mesh(kDomain, 4, 4);
  const DofMap vh = build_dofmap(m, Space::Vh);
  const DofMap ph = build_dofmap(m, Space::Ph);
  const StokesCase c = make_stokes_case(kDomain);
  const StokesSolution sol = solve_stokes(m, vh, ph, c.load);
  CHECK(sol.report.rel_residual <= 1e-10);
  CHECK(sol.report.unknowns == vh.free_count + ph.free_count);

  double pmax = 0.0, mean = 0.0;
  for (double v : sol.pressure.coeff) {
    pmax = std::max(pmax, std::abs(v));
    mean += v * m.hx * m.hy;
  }
  CHECK(std::abs(mean) <= 1e-12);
  CHECK(std::abs(sol.pressure.multiplier) <= 1e-8 * (1.0 + pmax));

  // enforced constraint: cell divergences all equal the tiny multiplier
  const Eigen::SparseMatrix<double> B = assemble_divergence_matrix(m, vh);
  const Eigen::Map<const Eigen::VectorXd> u(sol.velocity.coeff.data(),
                                            vh.free_count);
  const Eigen::VectorXd bu = B * u;
  for (int k = 0; k < bu.size(); ++k)
    CHECK(std::abs(bu(k)) <= 1e-9 * (1.0 + pmax));
}

TEST_CASE("manufactured plate solve meets the residual contract") {
  const Mesh m = build_uniform_mesh(kDomain, 4, 4);
  const DofMap wh = build_dofmap(m, Space::Wh);
  const ScalarCase c = make_plate_case(kDomain);
  SolveReport report;
  const FEField f = solve_biharmonic(m, wh, c.load, &report);
  CHECK(report.rel_residual <= 1e-10);
  CHECK(report.unknowns == 57);
  CHECK(f.coeff.size() == 57);
}

TEST_CASE("unreachable tolerance reports a solver failure") {
  const Mesh m = build_uniform_mesh(kDomain, 2, 2);
  const DofMap wh = build_dofmap(m, Space::Wh);
  CHECK_THROWS_AS(
      solve_biharmonic(m, wh, [](Vec2) { return 1.0; }, nullptr, 1e-30),
      Error);
}

TEST_CASE("assembly misuse is rejected") {
  const Mesh m = build_uniform_mesh(kDomain, 2, 2);
  const DofMap wh = build_dofmap(m, Space::Wh);
  const DofMap vh = build_dofmap(m, Space::Vh);
  const DofMap ph = build_dofmap(m, Space::Ph);
  CHECK_THROWS_AS(assemble_biharmonic(m, vh, [](Vec2) { return 0.0; }), Error);
  CHECK_THROWS_AS(assemble_biharmonic(m, wh, nullptr), Error);
  CHECK_THROWS_AS(assemble_stokes(m, wh, ph, nullptr), Error);
  CHECK_THROWS_AS(
      assemble_stokes(m, vh, vh, [](Vec2) -> Vec2 { return {0, 0}; }), Error);
}

} // TEST_SUITE
