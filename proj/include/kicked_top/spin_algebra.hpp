#pragma once

#include <complex>

#include <Eigen/Dense>

namespace kt {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Spin of total angular momentum j; stored as 2j so half-integers are exact.
class SpinSystem {
 public:
  /// Throws ConfigError unless j > 0 and 2j is an integer.
  static SpinSystem from_j(double j);
  static SpinSystem from_twice_j(int twice_j);

  int twice_j() const noexcept { return twice_j_; }
  double j() const noexcept { return 0.5 * twice_j_; }
  int dim() const noexcept { return twice_j_ + 1; }

  /// Magnetic quantum number of basis row `index` (row 0 is m = j).
  double m_of_index(int index) const noexcept { return j() - index; }

  friend bool operator==(const SpinSystem&, const SpinSystem&) = default;

 private:
  explicit SpinSystem(int twice_j) : twice_j_(twice_j) {}
  int twice_j_;
};

/// Collective angular momentum matrices in the J_z basis, ordered m = j .. -j.
struct OperatorSet {
  SpinSystem system;
  Matrix jx, jy, jz, jplus, jminus;
};

struct BlochVector {
  double x = 1.0;
  double y = 0.0;
  double z = 0.0;

  double norm() const;
};

/// Stereographic coordinate centred on the +x pole. The antipode (-1,0,0) is
/// an explicit point at infinity.
class StereoCoord {
 public:
  StereoCoord() = default;
  static StereoCoord finite(Complex gamma) { return StereoCoord(gamma, false); }
  static StereoCoord infinity() { return StereoCoord({}, true); }

  bool is_infinite() const noexcept { return infinite_; }
  /// Throws ConfigError for the point at infinity.
  Complex value() const;

 private:
  StereoCoord(Complex g, bool inf) : gamma_(g), infinite_(inf) {}
  Complex gamma_{};
  bool infinite_ = false;
};

OperatorSet build_operators(const SpinSystem& sys);

BlochVector bloch_from_gamma(const StereoCoord& g);

/// Inverse stereographic map; rejects |r| deviating from 1 by more than 1e-9.
StereoCoord gamma_from_bloch(const BlochVector& r);

/// Spin coherent state pointing along the Bloch direction of `g`.
Vector coherent_state(const SpinSystem& sys, const StereoCoord& g);
Vector coherent_state(const SpinSystem& sys, const BlochVector& r);

/// Real expectation value <psi|A|psi> for Hermitian A.
double expectation(const Vector& psi, const Matrix& a);

}  // namespace kt
