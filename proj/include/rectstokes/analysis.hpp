#pragma once

#include "rectstokes/assembly.hpp"
#include "rectstokes/cases.hpp"

namespace rectstokes {

/// Broken Sobolev distance |u - u_h|_{m,h}, m in {0,1,2}.  The order-2
/// seminorm sums the squares of the distinct second derivatives (the
/// mixed one counted once); the plate energy itself stays the full
/// tensor product, see assemble_biharmonic.
double broken_error(const Mesh& mesh, const FEField& field,
                    const ScalarCase& exact, int m, int quad = 10);
double broken_error(const Mesh& mesh, const FEField& field,
                    const StokesCase& exact, int m, int quad = 10);

/// L2 distance between the exact pressure and the piecewise-constant one.
double pressure_error(const Mesh& mesh, const FEField& pressure,
                      const StokesCase& exact, int quad = 10);

/// Broken H1 seminorm of a discrete field.
double field_h1_seminorm(const Mesh& mesh, const FEField& field, int quad = 5);

/// max over cells of |div u_h|; the divergence of a velocity field is
/// constant per cell, evaluated here from the basis derivatives.
double divergence_residual(const Mesh& mesh, const FEField& velocity);

/// Piecewise linear cell data: value at the cell center plus gradient.
struct P1Field {
  std::vector<std::array<double, 3>> cells;
};

/// Gradient recovery p*: on each cell grad p* matches the cell mean of
/// laplace(u_h) + f componentwise and the cell mean of p* equals p_h.
P1Field postprocess_pressure(const Mesh& mesh, const FEField& velocity,
                             const FEField& pressure,
                             const std::function<Vec2(Vec2)>& load,
                             int quad = 10);
double pressure_error(const Mesh& mesh, const P1Field& pstar,
                      const StokesCase& exact, int quad = 10);

/// Exactness and commutation diagnostics of the discrete complex
/// plate -> velocity -> pressure on one mesh.
struct ComplexReport {
  int nx = 0, ny = 0;
  int dim_wh = 0, dim_vh = 0, dim_ph = 0;
  bool dim_identity_ok = false; // dim_wh + (#cells - 1) == dim_vh
  int div_rank = 0, div_rank_expected = 0;
  int div_nullity = 0;          // expected: dim_wh
  int curl_rank = 0, curl_nullity = 0; // nullity 0 = injective
  double divcurl_defect = 0.0;  // max |D C|, exact-zero composition
  double commute_div_defect = 0.0;
  double commute_curl_defect = 0.0;
  double tol = 1e-10;
  bool passed() const;
};

ComplexReport verify_complex(const Mesh& mesh, double tol = 1e-10,
                             int quad = 10);

} // namespace rectstokes
