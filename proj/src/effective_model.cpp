#include "kicked_top/effective_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <limits>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "kicked_top/errors.hpp"

namespace kt {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kSingularityTolerance = 1e-9;
constexpr double kSeriesThreshold = 1e-6;

}  // namespace

Complex bch_dressing(double theta) {
  if (std::abs(theta) < kSeriesThreshold) {
    return {1.0 - theta * theta / 12.0, 0.5 * theta};
  }
  const double half = 0.5 * theta;
  return {half * std::cos(half) / std::sin(half), half};
}

Matrix build_effective_hamiltonian(const OperatorSet& ops, const KickedTopParams& par) {
  par.validate();
  const SpinSystem& sys = ops.system;
  const int n = sys.dim();
  const double j = sys.j();
  const double twist = par.kappa / (2.0 * j);

  Matrix h = Matrix::Zero(n, n);
  for (int row = 0; row < n; ++row) {
    const double m = sys.m_of_index(row);
    h(row, row) = twist * m * m;
  }
  for (int col = 1; col < n; ++col) {
    const double m = sys.m_of_index(col);
    const double theta = twist * (2.0 * m + 1.0);
    const long l = std::lround(theta / kTwoPi);
    if (l != 0 && std::abs(theta - kTwoPi * static_cast<double>(l)) < kSingularityTolerance) {
      std::ostringstream msg;
      msg << "effective Hamiltonian is singular: kappa(2m+1) = 4 j l pi at m = " << m
          << ", l = " << l;
      throw SingularityError(m, l, msg.str());
    }
    const Complex element = 0.5 * par.p * ops.jplus(col - 1, col).real() * bch_dressing(theta);
    h(col - 1, col) = element;
    h(col, col - 1) = std::conj(element);
  }
  return h;
}

EffectiveSpectrum effective_spectrum(const Matrix& h_eff, const KickedTopParams& par) {
  par.validate();
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h_eff);
  if (solver.info() != Eigen::Success) throw NumericalError("H_E diagonalization failed");
  EffectiveSpectrum out;
  out.unfolded = solver.eigenvalues() / par.period;
  out.folded.resize(out.unfolded.size());
  for (Eigen::Index a = 0; a < out.unfolded.size(); ++a) {
    out.folded[a] = fold_quasienergy(out.unfolded[a], par.omega());
  }
  out.modes = solver.eigenvectors();
  return out;
}

double fold_quasienergy(double e, double omega) {
  double r = std::fmod(e + 0.5 * omega, omega);
  if (r < 0.0) r += omega;
  if (r >= omega) r -= omega;
  return r - 0.5 * omega;
}

double circular_distance(double a, double b, double omega) {
  return std::abs(fold_quasienergy(a - b, omega));
}

MatchReport match_spectra(const FloquetSpectrum& exact, const EffectiveSpectrum& eff) {
  const Eigen::Index n = exact.quasienergies.size();
  if (eff.folded.size() != n) throw ConfigError("spectra have different dimensions");
  const double omega = exact.omega();

  std::vector<Eigen::Index> eff_order(n);
  std::iota(eff_order.begin(), eff_order.end(), 0);
  std::stable_sort(eff_order.begin(), eff_order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return eff.folded[a] < eff.folded[b];
  });

  // Both lists sorted on the circle: the optimal bijection is a cyclic shift.
  Eigen::Index best_shift = 0;
  double best_total = std::numeric_limits<double>::infinity();
  for (Eigen::Index shift = 0; shift < n; ++shift) {
    double total = 0.0;
    for (Eigen::Index k = 0; k < n; ++k) {
      total += circular_distance(eff.folded[eff_order[(k + shift) % n]],
                                 exact.quasienergies[k], omega);
    }
    if (total < best_total) {
      best_total = total;
      best_shift = shift;
    }
  }

  MatchReport report;
  report.pairing.assign(n, -1);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index a = eff_order[(k + best_shift) % n];
    const double d = circular_distance(eff.folded[a], exact.quasienergies[k], omega);
    report.pairing[a] = static_cast<int>(k);
    report.max_circular_distance = std::max(report.max_circular_distance, d);
    report.mean_circular_distance += d;
  }
  report.mean_circular_distance /= static_cast<double>(n);
  return report;
}

}  // namespace kt
