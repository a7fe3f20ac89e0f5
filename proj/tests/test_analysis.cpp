#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>

#include "rectstokes/analysis.hpp"
#include "rectstokes/quadrature.hpp"

using namespace rectstokes;

namespace {

const Domain kDomain{0.0, 2.0, 0.0, 1.0};

int locate_cell(const Mesh& m, Vec2 p) {
  const int i = std::clamp(static_cast<int>((p.x - m.domain.x_min) / m.hx), 0,
                           m.nx - 1);
  const int j = std::clamp(static_cast<int>((p.y - m.domain.y_min) / m.hy), 0,
                           m.ny - 1);
  return j * m.nx + i;
}

// Wraps a discrete scalar field as a case, so the error of a field
// against itself can be measured; valid at points interior to cells.
ScalarCase self_case(const Mesh& m, const FEField& f) {
  ScalarCase c;
  c.domain = m.domain;
  c.value = [&m, &f](Vec2 p) {
    return eval_field(m, f, locate_cell(m, p), p).x;
  };
  c.gradient = [&m, &f](Vec2 p) -> Vec2 {
    const int cell = locate_cell(m, p);
    return {eval_field(m, f, cell, p, 1, 0).x, eval_field(m, f, cell, p, 0, 1).x};
  };
  c.hessian = [&m, &f](Vec2 p) -> std::array<double, 3> {
    const int cell = locate_cell(m, p);
    return {eval_field(m, f, cell, p, 2, 0).x, eval_field(m, f, cell, p, 1, 1).x,
            eval_field(m, f, cell, p, 0, 2).x};
  };
  return c;
}

FEField random_field(const DofMap& map, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  FEField f;
  f.map = &map;
  f.coeff.assign(map.free_count, 0.0);
  for (double& c : f.coeff) c = unif(rng);
  return f;
}

} // namespace

TEST_SUITE("analysis") {

TEST_CASE("a field has zero broken distance to itself") {
  const Mesh m = build_uniform_mesh(kDomain, 4, 4);
  const DofMap wh = build_dofmap(m, Space::Wh);
  const FEField f = random_field(wh, 42);
  const ScalarCase c = self_case(m, f);
  CHECK(broken_error(m, f, c, 0) <= 1e-10);
  CHECK(broken_error(m, f, c, 1) <= 1e-9);
  CHECK(broken_error(m, f, c, 2) <= 1e-8);
}

TEST_CASE("h1 seminorm equals the broken distance to the zero velocity") {
  const Mesh m = build_uniform_mesh(kDomain, 4, 4);
  const DofMap vh = build_dofmap(m, Space::Vh);
  const FEField f = random_field(vh, 43);
  StokesCase zero;
  zero.domain = kDomain;
  zero.velocity = [](Vec2) -> Vec2 { return {0.0, 0.0}; };
  zero.velocity_gradient = [](Vec2) -> std::array<double, 4> {
    return {0.0, 0.0, 0.0, 0.0};
  };
  const double a = broken_error(m, f, zero, 1);
  const double b = field_h1_seminorm(m, f, 10);
  CHECK(a == doctest::Approx(b).epsilon(1e-12));
}

TEST_CASE("curls of plate fields are divergence free cell by cell") {
  const Mesh m = build_uniform_mesh(kDomain, 4, 4);
  const DofMap wh = build_dofmap(m, Space::Wh);
  const DofMap vh = build_dofmap(m, Space::Vh);
  const FEField w = random_field(wh, 44);
  const FEField v = curl_field(m, wh, w, vh);
  CHECK(divergence_residual(m, v) <= 1e-12);
}

TEST_CASE("solved velocities are divergence free to solver accuracy") {
  const Mesh m = build_uniform_mesh(kDomain, 4, 4);
  const DofMap vh = build_dofmap(m, Space::Vh);
  const DofMap ph = build_dofmap(m, Space::Ph);
  const StokesCase c = make_stokes_case(kDomain);
  const StokesSolution sol = solve_stokes(m, vh, ph, c.load);
  const double scale = std::max(1.0, field_h1_seminorm(m, sol.velocity));
  CHECK(divergence_residual(m, sol.velocity) <= 1e-10 * scale);
}

TEST_CASE("recovered pressure keeps the cell means and the mean slopes") {
  const Mesh m = build_uniform_mesh(kDomain, 4, 4);
  const DofMap vh = build_dofmap(m, Space::Vh);
  const DofMap ph = build_dofmap(m, Space::Ph);
  const StokesCase c = make_stokes_case(kDomain);
  const StokesSolution sol = solve_stokes(m, vh, ph, c.load);
  const P1Field pstar = postprocess_pressure(m, sol.velocity, sol.pressure, c.load);
  REQUIRE(pstar.cells.size() == 16);
  for (int k = 0; k < 16; ++k)
    CHECK(pstar.cells[k][0] == sol.pressure.coeff[k]);

  // independent quadrature of the cell-5 slope
  const int cell = 5;
  const CellRule r = cell_rule(m, cell, 10, 10);
  double mx = 0.0, my = 0.0;
  for (int q = 0; q < r.size(); ++q) {
    const Vec2 p{r.x[q], r.y[q]};
    const Vec2 f = c.load(p);
    const double lap0 = eval_field(m, sol.velocity, cell, p, 2, 0).x +
                        eval_field(m, sol.velocity, cell, p, 0, 2).x;
    const double lap1 = eval_field(m, sol.velocity, cell, p, 2, 0).y +
                        eval_field(m, sol.velocity, cell, p, 0, 2).y;
    mx += r.w[q] * (lap0 + f.x);
    my += r.w[q] * (lap1 + f.y);
  }
  const double area = m.hx * m.hy;
  CHECK(pstar.cells[cell][1] == doctest::Approx(mx / area).epsilon(1e-9));
  CHECK(pstar.cells[cell][2] == doctest::Approx(my / area).epsilon(1e-9));
}

TEST_CASE("plate errors on the coarse mesh sit on the published curve") {
  const Mesh m = build_uniform_mesh(kDomain, 4, 4);
  const DofMap wh = build_dofmap(m, Space::Wh);
  const ScalarCase c = make_plate_case(kDomain);
  const FEField u = solve_biharmonic(m, wh, c.load);
  CHECK(broken_error(m, u, c, 2) == doctest::Approx(1.209).epsilon(0.05).scale(0.0));
  CHECK(broken_error(m, u, c, 1) == doctest::Approx(7.041e-2).epsilon(0.05).scale(0.0));
  CHECK(broken_error(m, u, c, 0) == doctest::Approx(9.209e-3).epsilon(0.05).scale(0.0));
}

TEST_CASE("vertex-gradient plate errors on the coarse mesh match too") {
  const Mesh m = build_uniform_mesh(kDomain, 4, 4);
  const DofMap ad = build_dofmap(m, Space::Adini);
  const ScalarCase c = make_plate_case(kDomain);
  const FEField u = solve_biharmonic(m, ad, c.load);
  CHECK(broken_error(m, u, c, 2) == doctest::Approx(1.112).epsilon(0.05).scale(0.0));
  CHECK(broken_error(m, u, c, 1) == doctest::Approx(1.270e-1).epsilon(0.05).scale(0.0));
  CHECK(broken_error(m, u, c, 0) == doctest::Approx(2.195e-2).epsilon(0.05).scale(0.0));
}

TEST_CASE("stokes errors on the coarse mesh sit on the published curve") {
  const Mesh m = build_uniform_mesh(kDomain, 4, 4);
  const DofMap vh = build_dofmap(m, Space::Vh);
  const DofMap ph = build_dofmap(m, Space::Ph);
  const StokesCase c = make_stokes_case(kDomain);
  const StokesSolution sol = solve_stokes(m, vh, ph, c.load);
  CHECK(broken_error(m, sol.velocity, c, 1) == doctest::Approx(2.473).epsilon(0.05).scale(0.0));
  CHECK(broken_error(m, sol.velocity, c, 0) == doctest::Approx(1.100e-1).epsilon(0.05).scale(0.0));
  CHECK(pressure_error(m, sol.pressure, c) == doctest::Approx(6.569e-1).epsilon(0.05).scale(0.0));
  const P1Field pstar = postprocess_pressure(m, sol.velocity, sol.pressure, c.load);
  CHECK(pressure_error(m, pstar, c) == doctest::Approx(1.045).epsilon(0.05).scale(0.0));
}

TEST_CASE("complex diagnostics on the 2x2 mesh, with dense rank oracles") {
  const Mesh m = build_uniform_mesh(kDomain, 2, 2);
  const ComplexReport r = verify_complex(m);
  CHECK(r.dim_wh == 9);
  CHECK(r.dim_vh == 12);
  CHECK(r.dim_ph == 4);
  CHECK(r.dim_identity_ok);
  CHECK(r.div_rank == 3);
  CHECK(r.div_rank_expected == 3);
  CHECK(r.div_nullity == 9);
  CHECK(r.curl_rank == 9);
  CHECK(r.curl_nullity == 0);
  CHECK(r.divcurl_defect <= 1e-14);
  CHECK(r.commute_div_defect <= 1e-10);
  CHECK(r.commute_curl_defect <= 1e-10);
  CHECK(r.passed());

  const DofMap wh = build_dofmap(m, Space::Wh);
  const DofMap vh = build_dofmap(m, Space::Vh);
  const Eigen::MatrixXd C(curl_dof_matrix(m, wh, vh));
  const Eigen::MatrixXd D(divergence_dof_matrix(m, vh));
  CHECK(Eigen::FullPivLU<Eigen::MatrixXd>(C).rank() == 9);
  CHECK(Eigen::FullPivLU<Eigen::MatrixXd>(D).rank() == 3);
  // injectivity, quantified: the smallest singular value stays away from 0
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(C);
  CHECK(svd.singularValues()(8) > 1e-8);
}

TEST_CASE("complex diagnostics survive the degenerate single-cell mesh") {
  const Mesh m = build_uniform_mesh(kDomain, 1, 1);
  const ComplexReport r = verify_complex(m);
  CHECK(r.dim_wh == 0);
  CHECK(r.dim_vh == 0);
  CHECK(r.dim_ph == 1);
  CHECK(r.dim_identity_ok);
  CHECK(r.div_rank == 0);
  CHECK(r.passed());
}

TEST_CASE("complex diagnostics on the 4x4 mesh") {
  const Mesh m = build_uniform_mesh(kDomain, 4, 4);
  const ComplexReport r = verify_complex(m);
  CHECK(r.dim_wh == 57);
  CHECK(r.dim_vh == 72);
  CHECK(r.dim_ph == 16);
  CHECK(r.div_rank == 15);
  CHECK(r.div_nullity == 57);
  CHECK(r.curl_rank == 57);
  CHECK(r.curl_nullity == 0);
  CHECK(r.passed());
}

TEST_CASE("analysis misuse is rejected") {
  const Mesh m = build_uniform_mesh(kDomain, 2, 2);
  const DofMap wh = build_dofmap(m, Space::Wh);
  const DofMap vh = build_dofmap(m, Space::Vh);
  const FEField w = random_field(wh, 7);
  const FEField v = random_field(vh, 8);
  const ScalarCase sc = make_plate_case(kDomain);
  const StokesCase vc = make_stokes_case(kDomain);
  CHECK_THROWS_AS(broken_error(m, w, sc, 3), Error);
  CHECK_THROWS_AS(broken_error(m, v, vc, 2), Error);
  CHECK_THROWS_AS(broken_error(m, v, sc, 0), Error);
  CHECK_THROWS_AS(divergence_residual(m, w), Error);
  CHECK_THROWS_AS(broken_error(m, w, sc, 0, 99), Error);
}

} // TEST_SUITE
