#pragma once

#include <vector>

#include "kicked_top/floquet.hpp"
#include "kicked_top/spin_algebra.hpp"

namespace kt {

struct EffectiveSpectrum {
  Eigen::VectorXd unfolded;  // ascending
  Eigen::VectorXd folded;    // folded[a] = fold(unfolded[a], omega)
  Matrix modes;
};

struct MatchReport {
  double max_circular_distance = 0.0;
  double mean_circular_distance = 0.0;
  /// pairing[a] = index of the exact quasienergy matched with unfolded[a].
  std::vector<int> pairing;
};

/// The resummed first-order (in p) BCH effective Hamiltonian, so that
/// F ~ exp(-i H_E). Throws SingularityError when kappa(2m+1) hits 4 j l pi.
Matrix build_effective_hamiltonian(const OperatorSet& ops, const KickedTopParams& par);

/// g(-i theta) = (theta/2)(cot(theta/2) + i), the off-diagonal dressing factor.
Complex bch_dressing(double theta);

EffectiveSpectrum effective_spectrum(const Matrix& h_eff, const KickedTopParams& par);

/// Maps E into [-omega/2, omega/2).
double fold_quasienergy(double e, double omega);

/// Circular distance between two quasienergies on a circle of circumference omega.
double circular_distance(double a, double b, double omega);

MatchReport match_spectra(const FloquetSpectrum& exact, const EffectiveSpectrum& eff);

}  // namespace kt
