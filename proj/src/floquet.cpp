#include "kicked_top/floquet.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include <Eigen/Eigenvalues>

#include "kicked_top/errors.hpp"

namespace kt {

bool KickedTopParams::regular_regime() const {
  return std::abs(p) <= 0.3 && std::abs(kappa) <= 1.0;
}

void KickedTopParams::validate() const {
  if (!std::isfinite(p)) throw ConfigError("p must be finite");
  if (!std::isfinite(kappa)) throw ConfigError("kappa must be finite");
  if (!std::isfinite(period) || period <= 0.0) throw ConfigError("T must be positive");
}

FloquetBuilder::FloquetBuilder(const OperatorSet& ops) : system_(ops.system) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(ops.jx);
  jx_eigenvalues_ = solver.eigenvalues();
  jx_eigenvectors_ = solver.eigenvectors();
}

Matrix FloquetBuilder::kick(double p) const {
  Eigen::VectorXcd phases(jx_eigenvalues_.size());
  for (Eigen::Index k = 0; k < phases.size(); ++k) {
    phases[k] = std::polar(1.0, -p * jx_eigenvalues_[k]);
  }
  return jx_eigenvectors_ * phases.asDiagonal() * jx_eigenvectors_.adjoint();
}

Matrix FloquetBuilder::twist_diagonal(double kappa) const {
  const int n = system_.dim();
  const double scale = kappa / (2.0 * system_.j());
  Matrix d = Matrix::Zero(n, n);
  for (int row = 0; row < n; ++row) {
    const double m = system_.m_of_index(row);
    d(row, row) = std::polar(1.0, -scale * m * m);
  }
  return d;
}

Matrix FloquetBuilder::operator()(const KickedTopParams& par) const {
  par.validate();
  // Kick on the left, twist on the right: the twist column phases scale columns.
  Matrix f = kick(par.p);
  const Matrix twist = twist_diagonal(par.kappa);
  for (Eigen::Index col = 0; col < f.cols(); ++col) f.col(col) *= twist(col, col);
  return f;
}

Matrix build_floquet(const OperatorSet& ops, const KickedTopParams& par) {
  return FloquetBuilder(ops)(par);
}

double unitarity_defect(const Matrix& u) {
  const Matrix defect = u.adjoint() * u - Matrix::Identity(u.rows(), u.cols());
  return defect.cwiseAbs().maxCoeff();
}

FloquetSpectrum diagonalize_floquet(const Matrix& floquet, double period) {
  if (floquet.rows() != floquet.cols() || floquet.rows() == 0) {
    throw ConfigError("Floquet operator must be a non-empty square matrix");
  }
  if (!(period > 0.0)) throw ConfigError("T must be positive");
  if (unitarity_defect(floquet) > 1e-9) {
    throw ConfigError("Floquet operator is not unitary");
  }

  // Schur vectors of a normal matrix are an orthonormal eigenbasis, including
  // inside degenerate subspaces.
  Eigen::ComplexSchur<Matrix> schur(floquet);
  const Matrix& t = schur.matrixT();
  const Matrix& u = schur.matrixU();
  const Eigen::Index n = floquet.rows();
  const double omega = 2.0 * std::numbers::pi / period;

  std::vector<double> eps(n);
  for (Eigen::Index a = 0; a < n; ++a) {
    double e = -std::arg(t(a, a)) / period;
    if (e >= 0.5 * omega) e -= omega;
    eps[a] = e;
  }
  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return eps[a] < eps[b]; });

  FloquetSpectrum out;
  out.period = period;
  out.quasienergies.resize(n);
  out.modes.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.quasienergies[k] = eps[order[k]];
    out.modes.col(k) = u.col(order[k]);
  }
  return out;
}

Eigen::VectorXcd floquet_traces(const FloquetSpectrum& spectrum, int n_max) {
  if (n_max < 0) throw ConfigError("n_max must be non-negative");
  Eigen::VectorXcd traces = Eigen::VectorXcd::Zero(n_max);
  for (Eigen::Index a = 0; a < spectrum.quasienergies.size(); ++a) {
    const double phase = -spectrum.quasienergies[a] * spectrum.period;
    for (int n = 1; n <= n_max; ++n) traces[n - 1] += std::polar(1.0, n * phase);
  }
  return traces;
}

Eigen::VectorXcd floquet_traces(const Matrix& floquet, int n_max) {
  return floquet_traces(diagonalize_floquet(floquet, 1.0), n_max);
}

}  // namespace kt
