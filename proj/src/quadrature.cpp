#include "rectstokes/quadrature.hpp"

#include <cmath>
#include <string>

namespace rectstokes {

namespace {

// Legendre value and derivative by the three-term recurrence.
void legendre(int m, double x, double& p, double& dp) {
  double p0 = 1.0, p1 = x;
  for (int k = 2; k <= m; ++k) {
    const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  p = (m == 0) ? 1.0 : p1;
  dp = (m == 0) ? 0.0 : m * (x * p1 - p0) / (x * x - 1.0);
}

} // namespace

QuadRule1D gauss_1d(int m) {
  if (m < 1 || m > 20)
    throw Error(ErrorCode::invalid_argument,
                "quadrature: point count " + std::to_string(m) +
                    " outside [1,20]");

  QuadRule1D rule;
  rule.nodes.resize(m);
  rule.weights.resize(m);
  if (m == 1) {
    rule.nodes[0] = 0.0;
    rule.weights[0] = 2.0;
    return rule;
  }

  // Newton iteration from the Chebyshev initial guess; roots come out
  // descending, fill symmetric pairs.
  const int half = (m + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (m + 0.5));
    double p, dp;
    for (int it = 0; it < 100; ++it) {
      legendre(m, x, p, dp);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    legendre(m, x, p, dp);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[m - 1 - i] = x;
    rule.weights[m - 1 - i] = w;
    rule.nodes[i] = -x;
    rule.weights[i] = w;
  }
  return rule;
}

CellRule cell_rule(const Mesh& mesh, int cell, int mx, int my) {
  const CellGeometry g = cell_geometry(mesh, cell);
  const QuadRule1D qx = gauss_1d(mx);
  const QuadRule1D qy = gauss_1d(my);
  CellRule rule;
  rule.x.reserve(mx * my);
  rule.y.reserve(mx * my);
  rule.w.reserve(mx * my);
  const double jac = 0.25 * g.hx() * g.hy();
  for (int b = 0; b < my; ++b)
    for (int a = 0; a < mx; ++a) {
      const Vec2 p = g.unscale({qx.nodes[a], qy.nodes[b]});
      rule.x.push_back(p.x);
      rule.y.push_back(p.y);
      rule.w.push_back(jac * qx.weights[a] * qy.weights[b]);
    }
  return rule;
}

ScaledRule scaled_cell_rule(int mx, int my) {
  const QuadRule1D qx = gauss_1d(mx);
  const QuadRule1D qy = gauss_1d(my);
  ScaledRule r;
  r.sx.reserve(mx * my);
  r.sy.reserve(mx * my);
  r.w.reserve(mx * my);
  for (int b = 0; b < my; ++b)
    for (int a = 0; a < mx; ++a) {
      r.sx.push_back(qx.nodes[a]);
      r.sy.push_back(qy.nodes[b]);
      r.w.push_back(qx.weights[a] * qy.weights[b]);
    }
  return r;
}

EdgeRule edge_rule(const Mesh& mesh, int edge, int m) {
  if (edge < 0 || edge >= mesh.edge_count())
    throw Error(ErrorCode::invalid_argument,
                "quadrature: edge index " + std::to_string(edge) +
                    " out of range");
  const Edge& e = mesh.edges[edge];
  const Vec2 a = mesh.vertices[e.v0];
  const Vec2 b = mesh.vertices[e.v1];
  const QuadRule1D q = gauss_1d(m);
  EdgeRule rule;
  rule.x.resize(m);
  rule.y.resize(m);
  rule.w.resize(m);
  const double half_len = 0.5 * mesh.edge_length(edge);
  for (int i = 0; i < m; ++i) {
    const double t = q.nodes[i];
    rule.x[i] = 0.5 * (a.x + b.x) + 0.5 * (b.x - a.x) * t;
    rule.y[i] = 0.5 * (a.y + b.y) + 0.5 * (b.y - a.y) * t;
    rule.w[i] = half_len * q.weights[i];
  }
  return rule;
}

} // namespace rectstokes
