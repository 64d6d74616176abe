// Forward-mode automatic differentiation in two base variables (x, y).
//
// Jet2 carries a value with exact first and second partials, Jet1 a value
// with exact first partials. All scalar fields on a chart are evaluated as
// jets, so structural constants, curvatures and Schwarzian corrections come
// out with analytic accuracy instead of finite-difference noise.

#ifndef ZNAV_JET_HPP
#define ZNAV_JET_HPP

#include <cmath>

namespace znav {

struct Jet1 {
  double v = 0.0;
  double gx = 0.0;
  double gy = 0.0;
};

inline Jet1 operator+(const Jet1& a, const Jet1& b) { return {a.v + b.v, a.gx + b.gx, a.gy + b.gy}; }
inline Jet1 operator-(const Jet1& a, const Jet1& b) { return {a.v - b.v, a.gx - b.gx, a.gy - b.gy}; }
inline Jet1 operator-(const Jet1& a) { return {-a.v, -a.gx, -a.gy}; }
inline Jet1 operator*(const Jet1& a, const Jet1& b) {
  return {a.v * b.v, a.gx * b.v + a.v * b.gx, a.gy * b.v + a.v * b.gy};
}
inline Jet1 operator*(double s, const Jet1& a) { return {s * a.v, s * a.gx, s * a.gy}; }
inline Jet1 operator*(const Jet1& a, double s) { return s * a; }
inline Jet1 operator/(const Jet1& a, const Jet1& b) {
  const double inv = 1.0 / b.v;
  const double q = a.v * inv;
  return {q, (a.gx - q * b.gx) * inv, (a.gy - q * b.gy) * inv};
}
inline Jet1 operator+(const Jet1& a, double s) { return {a.v + s, a.gx, a.gy}; }
inline Jet1 operator-(const Jet1& a, double s) { return {a.v - s, a.gx, a.gy}; }

struct Jet2 {
  double v = 0.0;
  double gx = 0.0, gy = 0.0;
  double gxx = 0.0, gxy = 0.0, gyy = 0.0;

  // Jet of the coordinate functions and of a constant.
  static Jet2 var_x(double x) { return {x, 1.0, 0.0, 0.0, 0.0, 0.0}; }
  static Jet2 var_y(double y) { return {y, 0.0, 1.0, 0.0, 0.0, 0.0}; }
  static Jet2 constant(double c) { return {c, 0.0, 0.0, 0.0, 0.0, 0.0}; }

  // Value-and-gradient views: the jet itself, and the jets of its partials.
  Jet1 val1() const { return {v, gx, gy}; }
  Jet1 dx() const { return {gx, gxx, gxy}; }
  Jet1 dy() const { return {gy, gxy, gyy}; }
};

inline Jet2 operator+(const Jet2& a, const Jet2& b) {
  return {a.v + b.v, a.gx + b.gx, a.gy + b.gy, a.gxx + b.gxx, a.gxy + b.gxy, a.gyy + b.gyy};
}
inline Jet2 operator-(const Jet2& a, const Jet2& b) {
  return {a.v - b.v, a.gx - b.gx, a.gy - b.gy, a.gxx - b.gxx, a.gxy - b.gxy, a.gyy - b.gyy};
}
inline Jet2 operator-(const Jet2& a) { return {-a.v, -a.gx, -a.gy, -a.gxx, -a.gxy, -a.gyy}; }
inline Jet2 operator+(const Jet2& a, double s) { return {a.v + s, a.gx, a.gy, a.gxx, a.gxy, a.gyy}; }
inline Jet2 operator+(double s, const Jet2& a) { return a + s; }
inline Jet2 operator-(const Jet2& a, double s) { return a + (-s); }
inline Jet2 operator-(double s, const Jet2& a) { return (-a) + s; }

inline Jet2 operator*(const Jet2& a, const Jet2& b) {
  Jet2 r;
  r.v = a.v * b.v;
  r.gx = a.gx * b.v + a.v * b.gx;
  r.gy = a.gy * b.v + a.v * b.gy;
  r.gxx = a.gxx * b.v + 2.0 * a.gx * b.gx + a.v * b.gxx;
  r.gxy = a.gxy * b.v + a.gx * b.gy + a.gy * b.gx + a.v * b.gxy;
  r.gyy = a.gyy * b.v + 2.0 * a.gy * b.gy + a.v * b.gyy;
  return r;
}
inline Jet2 operator*(double s, const Jet2& a) {
  return {s * a.v, s * a.gx, s * a.gy, s * a.gxx, s * a.gxy, s * a.gyy};
}
inline Jet2 operator*(const Jet2& a, double s) { return s * a; }

// Composition with a scalar function h: needs h(f), h'(f), h''(f).
inline Jet2 compose(const Jet2& f, double h0, double h1, double h2) {
  Jet2 r;
  r.v = h0;
  r.gx = h1 * f.gx;
  r.gy = h1 * f.gy;
  r.gxx = h2 * f.gx * f.gx + h1 * f.gxx;
  r.gxy = h2 * f.gx * f.gy + h1 * f.gxy;
  r.gyy = h2 * f.gy * f.gy + h1 * f.gyy;
  return r;
}

inline Jet2 inv(const Jet2& a) {
  const double u = 1.0 / a.v;
  return compose(a, u, -u * u, 2.0 * u * u * u);
}
inline Jet2 operator/(const Jet2& a, const Jet2& b) { return a * inv(b); }
inline Jet2 operator/(double s, const Jet2& b) { return s * inv(b); }
inline Jet2 operator/(const Jet2& a, double s) { return (1.0 / s) * a; }

inline Jet2 sin(const Jet2& a) {
  const double s = std::sin(a.v), c = std::cos(a.v);
  return compose(a, s, c, -s);
}
inline Jet2 cos(const Jet2& a) {
  const double s = std::sin(a.v), c = std::cos(a.v);
  return compose(a, c, -s, -c);
}
inline Jet2 exp(const Jet2& a) {
  const double e = std::exp(a.v);
  return compose(a, e, e, e);
}
inline Jet2 log(const Jet2& a) {
  const double u = 1.0 / a.v;
  return compose(a, std::log(a.v), u, -u * u);
}
inline Jet2 sqrt(const Jet2& a) {
  const double s = std::sqrt(a.v);
  return compose(a, s, 0.5 / s, -0.25 / (s * a.v));
}

// pow keeps integer exponents exact (valid for negative bases as well).
inline Jet2 pow(const Jet2& a, double p) {
  const double ip = std::nearbyint(p);
  if (ip == p && std::fabs(p) <= 64.0) {
    long n = static_cast<long>(ip);
    if (n == 0) return Jet2::constant(1.0);
    const bool neg = n < 0;
    if (neg) n = -n;
    Jet2 r = Jet2::constant(1.0);
    Jet2 base = a;
    while (n > 0) {
      if (n & 1) r = r * base;
      base = base * base;
      n >>= 1;
    }
    return neg ? inv(r) : r;
  }
  const double h0 = std::pow(a.v, p);
  const double h1 = p * std::pow(a.v, p - 1.0);
  const double h2 = p * (p - 1.0) * std::pow(a.v, p - 2.0);
  return compose(a, h0, h1, h2);
}
inline Jet2 pow(const Jet2& a, const Jet2& b) { return exp(b * log(a)); }

}  // namespace znav

#endif
