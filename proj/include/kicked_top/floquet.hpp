#pragma once

#include <numbers>

#include "kicked_top/spin_algebra.hpp"

namespace kt {

/// Kick strength p, twist strength kappa and driving period T.
struct KickedTopParams {
  double p = 0.1;
  double kappa = 0.2;
  double period = 1.0;

  double omega() const { return 2.0 * std::numbers::pi / period; }

  /// Advisory only: false once p or kappa leave the small-parameter regime
  /// where the effective Hamiltonian is meaningful.
  bool regular_regime() const;

  /// Throws ConfigError for T <= 0 or non-finite parameters.
  void validate() const;
};

struct FloquetSpectrum {
  /// Quasienergies in [-omega/2, omega/2), ascending.
  Eigen::VectorXd quasienergies;
  /// Column a is the Floquet mode with quasienergy quasienergies[a].
  Matrix modes;
  double period = 1.0;

  int dim() const { return static_cast<int>(quasienergies.size()); }
  double omega() const { return 2.0 * std::numbers::pi / period; }
};

/// Builds F = exp(-i p Jx) exp(-i kappa/(2j) Jz^2) for many parameter values
/// reusing a single eigendecomposition of Jx.
class FloquetBuilder {
 public:
  explicit FloquetBuilder(const OperatorSet& ops);

  Matrix kick(double p) const;
  Matrix twist_diagonal(double kappa) const;
  Matrix operator()(const KickedTopParams& par) const;

  const SpinSystem& system() const { return system_; }

 private:
  SpinSystem system_;
  Eigen::VectorXd jx_eigenvalues_;
  Matrix jx_eigenvectors_;
};

Matrix build_floquet(const OperatorSet& ops, const KickedTopParams& par);

/// Eigenphases and orthonormal eigenvectors of a unitary. Quasienergies are
/// -arg(lambda)/T folded into the half-open zone [-omega/2, omega/2).
FloquetSpectrum diagonalize_floquet(const Matrix& floquet, double period);

/// t_n = sum_a exp(-i n eps_a T) for n = 1..n_max (element n-1 holds t_n).
Eigen::VectorXcd floquet_traces(const FloquetSpectrum& spectrum, int n_max);
Eigen::VectorXcd floquet_traces(const Matrix& floquet, int n_max);

/// Largest entry of |U^dagger U - 1|.
double unitarity_defect(const Matrix& u);

}  // namespace kt
