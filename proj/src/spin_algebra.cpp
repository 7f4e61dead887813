#include "kicked_top/spin_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "kicked_top/errors.hpp"

namespace kt {

SpinSystem SpinSystem::from_j(double j) {
  const double twice = 2.0 * j;
  if (!std::isfinite(j) || j <= 0.0 || std::abs(twice - std::round(twice)) > 1e-12) {
    throw ConfigError("j must be a positive half-integer, got " + std::to_string(j));
  }
  return SpinSystem(static_cast<int>(std::lround(twice)));
}

SpinSystem SpinSystem::from_twice_j(int twice_j) {
  if (twice_j < 1) {
    throw ConfigError("2j must be a positive integer, got " + std::to_string(twice_j));
  }
  return SpinSystem(twice_j);
}

double BlochVector::norm() const { return std::sqrt(x * x + y * y + z * z); }

Complex StereoCoord::value() const {
  if (infinite_) throw ConfigError("stereographic point at infinity has no finite value");
  return gamma_;
}

OperatorSet build_operators(const SpinSystem& sys) {
  const int n = sys.dim();
  const double j = sys.j();
  OperatorSet ops{sys, Matrix::Zero(n, n), Matrix::Zero(n, n), Matrix::Zero(n, n),
                  Matrix::Zero(n, n), Matrix::Zero(n, n)};
  for (int row = 0; row < n; ++row) ops.jz(row, row) = sys.m_of_index(row);
  // <m+1|J+|m>: column of m is one to the right of the row of m+1.
  for (int col = 1; col < n; ++col) {
    const double m = sys.m_of_index(col);
    ops.jplus(col - 1, col) = std::sqrt(j * (j + 1.0) - m * (m + 1.0));
  }
  ops.jminus = ops.jplus.adjoint();
  ops.jx = 0.5 * (ops.jplus + ops.jminus);
  ops.jy = Complex(0.0, -0.5) * (ops.jplus - ops.jminus);
  return ops;
}

BlochVector bloch_from_gamma(const StereoCoord& g) {
  if (g.is_infinite()) return {-1.0, 0.0, 0.0};
  const Complex gamma = g.value();
  const double r2 = std::norm(gamma);
  const double den = 1.0 + r2;
  return {(1.0 - r2) / den, 2.0 * gamma.imag() / den, -2.0 * gamma.real() / den};
}

StereoCoord gamma_from_bloch(const BlochVector& r) {
  if (std::abs(r.norm() - 1.0) > 1e-9) {
    throw ConfigError("Bloch vector is not of unit length");
  }
  // 1 + X, computed without cancellation on the far hemisphere.
  const double t2 = r.y * r.y + r.z * r.z;
  const double one_plus_x = r.x >= 0.0 ? 1.0 + r.x : t2 / (1.0 - r.x);
  if (one_plus_x <= 0.0) return StereoCoord::infinity();
  return StereoCoord::finite({-r.z / one_plus_x, r.y / one_plus_x});
}

Vector coherent_state(const SpinSystem& sys, const BlochVector& r) {
  const double len = r.norm();
  const double x = r.x / len, y = r.y / len, z = r.z / len;
  const double half_theta = 0.5 * std::acos(std::clamp(z, -1.0, 1.0));
  const double phi = std::atan2(y, x);
  const double c = std::cos(half_theta);
  const double s = std::sin(half_theta);
  const int n = sys.dim();
  const int two_j = sys.twice_j();

  // Column m of the Wigner d-matrix for the rotation taking z onto r.
  Vector psi(n);
  const double log_fact_2j = std::lgamma(two_j + 1.0);
  for (int row = 0; row < n; ++row) {
    const double m = sys.m_of_index(row);
    const int up = two_j - row;  // j + m
    const int down = row;        // j - m
    double log_mag = 0.5 * (log_fact_2j - std::lgamma(up + 1.0) - std::lgamma(down + 1.0));
    bool zero = false;
    if (up > 0) {
      if (c == 0.0) zero = true; else log_mag += up * std::log(c);
    }
    if (down > 0) {
      if (s == 0.0) zero = true; else log_mag += down * std::log(s);
    }
    psi[row] = zero ? Complex{} : std::polar(std::exp(log_mag), -m * phi);
  }
  return psi / psi.norm();
}

Vector coherent_state(const SpinSystem& sys, const StereoCoord& g) {
  return coherent_state(sys, bloch_from_gamma(g));
}

double expectation(const Vector& psi, const Matrix& a) {
  return psi.dot(a * psi).real();
}

}  // namespace kt
