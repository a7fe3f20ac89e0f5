#pragma once

#include <array>
#include <string>
#include <vector>

#include "rectstokes/elements.hpp"

namespace rectstokes {

/// Manufactured clamped-plate problem: all callbacks are closed-form and
/// mutually consistent (load = biharmonic of value).
struct ScalarCase {
  std::string name;
  Domain domain;
  std::function<double(Vec2)> value;
  std::function<Vec2(Vec2)> gradient;
  std::function<std::array<double, 3>(Vec2)> hessian; // xx, xy, yy
  std::function<double(Vec2)> load;
  ScalarFunction function() const { return {value, gradient}; }
};

/// Manufactured Stokes problem: divergence-free velocity (a stream
/// function curl), zero-mean pressure, load = -laplace(u) + grad(p).
struct StokesCase {
  std::string name;
  Domain domain;
  std::function<Vec2(Vec2)> velocity;
  std::function<std::array<double, 4>(Vec2)> velocity_gradient; // u1x u1y u2x u2y
  std::function<double(Vec2)> pressure;
  std::function<Vec2(Vec2)> load;
  VectorFunction function() const { return {velocity}; }
};

/// u = (3x^2 - 2y + 6xy^2) * bubble^2, clamped on the boundary.
ScalarCase make_plate_case(const Domain& domain);

/// u = curl(e^{x+2y} bubble^2), p = -sin(2 pi x) sin(2 pi y).
StokesCase make_stokes_case(const Domain& domain);

/// Smooth fields with vanishing boundary dofs, used to exercise the
/// interpolation/divergence and interpolation/curl commutation checks.
struct BatteryField {
  std::string name;
  VectorFunction field;
  std::function<double(Vec2)> divergence;
};

struct PotentialField {
  std::string name;
  ScalarFunction potential;
};

std::vector<BatteryField> velocity_battery(const Domain& domain);
std::vector<PotentialField> potential_battery(const Domain& domain);

} // namespace rectstokes
