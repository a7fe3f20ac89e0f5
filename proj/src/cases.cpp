#include "rectstokes/cases.hpp"

#include <cmath>

#include "rectstokes/poly.hpp"

namespace rectstokes {

namespace {

// e^{ax+by} q(x,y): closed under differentiation, which keeps the Stokes
// stream-function machinery exact.
struct ExpPoly {
  double a = 0.0, b = 0.0;
  Poly2 q;
  double operator()(Vec2 p) const {
    return std::exp(a * p.x + b * p.y) * q(p.x, p.y);
  }
  ExpPoly dx() const { return {a, b, q * a + q.dx()}; }
  ExpPoly dy() const { return {a, b, q * b + q.dy()}; }
  ExpPoly operator+(const ExpPoly& o) const { return {a, b, q + o.q}; }
  ExpPoly operator-() const { return {a, b, q * -1.0}; }
};

// ((x-x0)(x-x1))^2 ((y-y0)(y-y1))^2: vanishes with its gradient on the
// whole boundary of the rectangle.
Poly2 boundary_bubble(const Domain& d) {
  Poly2 qx = Poly2::monomial(2, 0) - (d.x_min + d.x_max) * Poly2::monomial(1, 0) +
             Poly2::constant(d.x_min * d.x_max);
  Poly2 qy = Poly2::monomial(0, 2) - (d.y_min + d.y_max) * Poly2::monomial(0, 1) +
             Poly2::constant(d.y_min * d.y_max);
  return (qx * qx) * (qy * qy);
}

} // namespace

ScalarCase make_plate_case(const Domain& domain) {
  const Poly2 b = boundary_bubble(domain);
  const Poly2 g = 3.0 * Poly2::monomial(2, 0) - 2.0 * Poly2::monomial(0, 1) +
                  6.0 * Poly2::monomial(1, 2);
  const Poly2 u = g * b;
  const Poly2 ux = u.dx(), uy = u.dy();
  const Poly2 uxx = ux.dx(), uxy = ux.dy(), uyy = uy.dy();
  const Poly2 f = u.deriv(4, 0) + 2.0 * u.deriv(2, 2) + u.deriv(0, 4);

  ScalarCase c;
  c.name = "poly-bubble";
  c.domain = domain;
  c.value = [u](Vec2 p) { return u(p.x, p.y); };
  c.gradient = [ux, uy](Vec2 p) -> Vec2 {
    return {ux(p.x, p.y), uy(p.x, p.y)};
  };
  c.hessian = [uxx, uxy, uyy](Vec2 p) -> std::array<double, 3> {
    return {uxx(p.x, p.y), uxy(p.x, p.y), uyy(p.x, p.y)};
  };
  c.load = [f](Vec2 p) { return f(p.x, p.y); };
  return c;
}

StokesCase make_stokes_case(const Domain& domain) {
  const ExpPoly psi{1.0, 2.0, boundary_bubble(domain)};
  const ExpPoly u1 = psi.dy();
  const ExpPoly u2 = -psi.dx();
  const ExpPoly u1x = u1.dx(), u1y = u1.dy();
  const ExpPoly u2x = u2.dx(), u2y = u2.dy();
  const ExpPoly lap1 = u1x.dx() + u1y.dy();
  const ExpPoly lap2 = u2x.dx() + u2y.dy();

  constexpr double tp = 2.0 * M_PI;

  StokesCase c;
  c.name = "exp-bubble";
  c.domain = domain;
  c.velocity = [u1, u2](Vec2 p) -> Vec2 { return {u1(p), u2(p)}; };
  c.velocity_gradient = [u1x, u1y, u2x, u2y](Vec2 p) -> std::array<double, 4> {
    return {u1x(p), u1y(p), u2x(p), u2y(p)};
  };
  c.pressure = [](Vec2 p) { return -std::sin(tp * p.x) * std::sin(tp * p.y); };
  c.load = [lap1, lap2](Vec2 p) -> Vec2 {
    const double px = -tp * std::cos(tp * p.x) * std::sin(tp * p.y);
    const double py = -tp * std::sin(tp * p.x) * std::cos(tp * p.y);
    return {-lap1(p) + px, -lap2(p) + py};
  };
  return c;
}

std::vector<BatteryField> velocity_battery(const Domain& domain) {
  const Poly2 b = boundary_bubble(domain);
  const Poly2 bx = b.dx(), by = b.dy();
  const double ax = M_PI / domain.width();
  const double ay = M_PI / domain.height();
  const double x0 = domain.x_min, y0 = domain.y_min;
  const auto s = [=](Vec2 p) {
    return std::sin(ax * (p.x - x0)) * std::sin(ay * (p.y - y0));
  };
  const auto sx = [=](Vec2 p) {
    return ax * std::cos(ax * (p.x - x0)) * std::sin(ay * (p.y - y0));
  };
  const auto sy = [=](Vec2 p) {
    return ay * std::sin(ax * (p.x - x0)) * std::cos(ay * (p.y - y0));
  };

  const ExpPoly epsi{1.0, 2.0, b};
  const ExpPoly e1 = epsi.dy(), e2 = -epsi.dx();

  std::vector<BatteryField> fields;
  fields.push_back({"curl-bubble",
                    {[=](Vec2 p) -> Vec2 {
                      return {by(p.x, p.y), -bx(p.x, p.y)};
                    }},
                    [](Vec2) { return 0.0; }});
  fields.push_back({"curl-exp-bubble",
                    {[=](Vec2 p) -> Vec2 {
                      return {e1(p), e2(p)};
                    }},
                    [](Vec2) { return 0.0; }});
  fields.push_back({"bubble-x",
                    {[=](Vec2 p) -> Vec2 {
                      return {b(p.x, p.y), 0.0};
                    }},
                    [=](Vec2 p) { return bx(p.x, p.y); }});
  fields.push_back({"bubble-y",
                    {[=](Vec2 p) -> Vec2 {
                      return {0.0, b(p.x, p.y)};
                    }},
                    [=](Vec2 p) { return by(p.x, p.y); }});
  fields.push_back({"bubble-radial",
                    {[=](Vec2 p) -> Vec2 {
                      return {p.x * b(p.x, p.y), p.y * b(p.x, p.y)};
                    }},
                    [=](Vec2 p) {
                      return 2.0 * b(p.x, p.y) + p.x * bx(p.x, p.y) +
                             p.y * by(p.x, p.y);
                    }});
  fields.push_back({"sine-diagonal",
                    {[=](Vec2 p) -> Vec2 {
                      return {s(p), s(p)};
                    }},
                    [=](Vec2 p) { return sx(p) + sy(p); }});
  return fields;
}

std::vector<PotentialField> potential_battery(const Domain& domain) {
  const Poly2 b = boundary_bubble(domain);
  const Poly2 bx = b.dx(), by = b.dy();
  const Poly2 xb = Poly2::monomial(1, 0) * b;
  const Poly2 xbx = xb.dx(), xby = xb.dy();
  const Poly2 yb = Poly2::monomial(0, 1) * b;
  const Poly2 ybx = yb.dx(), yby = yb.dy();
  const ExpPoly eb{1.0, 2.0, b};
  const ExpPoly ebx = eb.dx(), eby = eb.dy();
  const double ax = M_PI / domain.width();
  const double ay = M_PI / domain.height();
  const double x0 = domain.x_min, y0 = domain.y_min;
  const auto s = [=](Vec2 p) {
    return std::sin(ax * (p.x - x0)) * std::sin(ay * (p.y - y0));
  };
  const auto sx = [=](Vec2 p) {
    return ax * std::cos(ax * (p.x - x0)) * std::sin(ay * (p.y - y0));
  };
  const auto sy = [=](Vec2 p) {
    return ay * std::sin(ax * (p.x - x0)) * std::cos(ay * (p.y - y0));
  };

  std::vector<PotentialField> pots;
  pots.push_back({"bubble",
                  {[=](Vec2 p) { return b(p.x, p.y); },
                   [=](Vec2 p) -> Vec2 {
                     return {bx(p.x, p.y), by(p.x, p.y)};
                   }}});
  pots.push_back({"exp-bubble",
                  {[=](Vec2 p) { return eb(p); },
                   [=](Vec2 p) -> Vec2 {
                     return {ebx(p), eby(p)};
                   }}});
  pots.push_back({"x-bubble",
                  {[=](Vec2 p) { return xb(p.x, p.y); },
                   [=](Vec2 p) -> Vec2 {
                     return {xbx(p.x, p.y), xby(p.x, p.y)};
                   }}});
  pots.push_back({"y-bubble",
                  {[=](Vec2 p) { return yb(p.x, p.y); },
                   [=](Vec2 p) -> Vec2 {
                     return {ybx(p.x, p.y), yby(p.x, p.y)};
                   }}});
  pots.push_back({"sine-squared",
                  {[=](Vec2 p) { return s(p) * s(p); },
                   [=](Vec2 p) -> Vec2 {
                     return {2.0 * s(p) * sx(p), 2.0 * s(p) * sy(p)};
                   }}});
  return pots;
}

} // namespace rectstokes
