#pragma once

// Second-order forward-mode jets: value, gradient and Hessian carried through
// arithmetic so the landscape formula is written once and differentiated exactly.

#include <cmath>

#include <Eigen/Dense>

namespace kt::detail {

template <int N>
struct Jet {
  using Grad = Eigen::Matrix<double, N, 1>;
  using Hess = Eigen::Matrix<double, N, N>;

  double v = 0.0;
  Grad g = Grad::Zero();
  Hess h = Hess::Zero();

  Jet() = default;
  Jet(double value) : v(value) {}  // NOLINT: constants promote implicitly

  static Jet variable(double value, int index) {
    Jet r(value);
    r.g[index] = 1.0;
    return r;
  }
};

template <int N>
Jet<N> chain(const Jet<N>& a, double f, double df, double d2f) {
  Jet<N> r;
  r.v = f;
  r.g = df * a.g;
  r.h = df * a.h + d2f * a.g * a.g.transpose();
  return r;
}

template <int N>
Jet<N> operator-(const Jet<N>& a) {
  Jet<N> r;
  r.v = -a.v;
  r.g = -a.g;
  r.h = -a.h;
  return r;
}

template <int N>
Jet<N> operator+(const Jet<N>& a, const Jet<N>& b) {
  Jet<N> r;
  r.v = a.v + b.v;
  r.g = a.g + b.g;
  r.h = a.h + b.h;
  return r;
}

template <int N>
Jet<N> operator-(const Jet<N>& a, const Jet<N>& b) {
  return a + (-b);
}

template <int N>
Jet<N> operator*(const Jet<N>& a, const Jet<N>& b) {
  Jet<N> r;
  r.v = a.v * b.v;
  r.g = a.g * b.v + a.v * b.g;
  r.h = a.h * b.v + a.v * b.h + a.g * b.g.transpose() + b.g * a.g.transpose();
  return r;
}

template <int N>
Jet<N> reciprocal(const Jet<N>& a) {
  const double inv = 1.0 / a.v;
  return chain(a, inv, -inv * inv, 2.0 * inv * inv * inv);
}

template <int N>
Jet<N> operator/(const Jet<N>& a, const Jet<N>& b) {
  return a * reciprocal(b);
}

template <int N> Jet<N> operator+(const Jet<N>& a, double b) { return a + Jet<N>(b); }
template <int N> Jet<N> operator+(double a, const Jet<N>& b) { return Jet<N>(a) + b; }
template <int N> Jet<N> operator-(const Jet<N>& a, double b) { return a - Jet<N>(b); }
template <int N> Jet<N> operator-(double a, const Jet<N>& b) { return Jet<N>(a) - b; }
template <int N> Jet<N> operator*(const Jet<N>& a, double b) { return a * Jet<N>(b); }
template <int N> Jet<N> operator*(double a, const Jet<N>& b) { return Jet<N>(a) * b; }
template <int N> Jet<N> operator/(const Jet<N>& a, double b) { return a * (1.0 / b); }
template <int N> Jet<N> operator/(double a, const Jet<N>& b) { return Jet<N>(a) / b; }

template <int N>
Jet<N> sin(const Jet<N>& a) {
  return chain(a, std::sin(a.v), std::cos(a.v), -std::sin(a.v));
}

template <int N>
Jet<N> cos(const Jet<N>& a) {
  return chain(a, std::cos(a.v), -std::sin(a.v), -std::cos(a.v));
}

inline double value_of(double x) { return x; }
template <int N>
double value_of(const Jet<N>& x) {
  return x.v;
}

using std::cos;
using std::sin;

}  // namespace kt::detail
