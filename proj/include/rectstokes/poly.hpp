#pragma once

#include <cassert>
#include <vector>

namespace rectstokes {

/// Dense bivariate polynomial sum_ij c(i,j) x^i y^j.  Closed under
/// differentiation and products, which keeps manufactured solutions and
/// shape functions exact up to rounding.
class Poly2 {
public:
  Poly2() : nx_(1), ny_(1), c_(1, 0.0) {}
  Poly2(int deg_x, int deg_y)
      : nx_(deg_x + 1), ny_(deg_y + 1), c_(nx_ * ny_, 0.0) {
    assert(deg_x >= 0 && deg_y >= 0);
  }

  static Poly2 constant(double v) {
    Poly2 p;
    p.at(0, 0) = v;
    return p;
  }

  static Poly2 monomial(int i, int j, double v = 1.0) {
    Poly2 p(i, j);
    p.at(i, j) = v;
    return p;
  }

  int deg_x() const { return nx_ - 1; }
  int deg_y() const { return ny_ - 1; }

  double& at(int i, int j) {
    assert(i >= 0 && i < nx_ && j >= 0 && j < ny_);
    return c_[i * ny_ + j];
  }
  double at(int i, int j) const {
    return (i < nx_ && j < ny_) ? c_[i * ny_ + j] : 0.0;
  }

  /// Horner evaluation, outer loop over x powers.
  double operator()(double x, double y) const {
    double acc = 0.0;
    for (int i = nx_ - 1; i >= 0; --i) {
      double row = 0.0;
      for (int j = ny_ - 1; j >= 0; --j) row = row * y + c_[i * ny_ + j];
      acc = acc * x + row;
    }
    return acc;
  }

  Poly2 dx() const {
    if (nx_ == 1) return Poly2();
    Poly2 r(nx_ - 2, ny_ - 1);
    for (int i = 1; i < nx_; ++i)
      for (int j = 0; j < ny_; ++j) r.at(i - 1, j) = i * c_[i * ny_ + j];
    return r;
  }

  Poly2 dy() const {
    if (ny_ == 1) return Poly2();
    Poly2 r(nx_ - 1, ny_ - 2);
    for (int i = 0; i < nx_; ++i)
      for (int j = 1; j < ny_; ++j) r.at(i, j - 1) = j * c_[i * ny_ + j];
    return r;
  }

  Poly2 deriv(int ax, int ay) const {
    Poly2 r = *this;
    for (int k = 0; k < ax; ++k) r = r.dx();
    for (int k = 0; k < ay; ++k) r = r.dy();
    return r;
  }

  Poly2 operator+(const Poly2& o) const {
    Poly2 r(std::max(deg_x(), o.deg_x()), std::max(deg_y(), o.deg_y()));
    for (int i = 0; i < r.nx_; ++i)
      for (int j = 0; j < r.ny_; ++j) r.at(i, j) = at(i, j) + o.at(i, j);
    return r;
  }

  Poly2 operator-(const Poly2& o) const {
    Poly2 r(std::max(deg_x(), o.deg_x()), std::max(deg_y(), o.deg_y()));
    for (int i = 0; i < r.nx_; ++i)
      for (int j = 0; j < r.ny_; ++j) r.at(i, j) = at(i, j) - o.at(i, j);
    return r;
  }

  Poly2 operator*(const Poly2& o) const {
    Poly2 r(deg_x() + o.deg_x(), deg_y() + o.deg_y());
    for (int i = 0; i < nx_; ++i)
      for (int j = 0; j < ny_; ++j) {
        const double cij = c_[i * ny_ + j];
        if (cij == 0.0) continue;
        for (int k = 0; k < o.nx_; ++k)
          for (int l = 0; l < o.ny_; ++l)
            r.at(i + k, j + l) += cij * o.at(k, l);
      }
    return r;
  }

  Poly2 operator*(double s) const {
    Poly2 r = *this;
    for (double& v : r.c_) v *= s;
    return r;
  }

  friend Poly2 operator*(double s, const Poly2& p) { return p * s; }

private:
  int nx_, ny_;
  std::vector<double> c_;
};

} // namespace rectstokes
