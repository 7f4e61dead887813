#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "kicked_top/effective_model.hpp"
#include "kicked_top/errors.hpp"
#include "kicked_top/floquet.hpp"

using namespace kt;

namespace {

constexpr double kPi = std::numbers::pi;

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

Matrix unitary_from_hermitian(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  Vector phases(h.rows());
  for (Eigen::Index k = 0; k < h.rows(); ++k) phases[k] = std::polar(1.0, -es.eigenvalues()[k]);
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

double max_distance(double j, double p, double kappa) {
  const auto ops = build_operators(SpinSystem::from_j(j));
  const KickedTopParams par{p, kappa, 1.0};
  const auto exact = diagonalize_floquet(build_floquet(ops, par), 1.0);
  const auto eff = effective_spectrum(build_effective_hamiltonian(ops, par), par);
  return match_spectra(exact, eff).max_circular_distance;
}

}  // namespace

TEST_CASE("spin-1 effective Hamiltonian entries") {
  const auto ops = build_operators(SpinSystem::from_j(1.0));
  const KickedTopParams par{0.1, 0.6, 1.0};
  const Matrix h = build_effective_hamiltonian(ops, par);
  auto g = [](double t) { return Complex(0.5 * t / std::tan(0.5 * t), 0.5 * t); };
  const double c = std::sqrt(2.0);
  CHECK(std::abs(h(0, 0) - 0.3) < 1e-15);
  CHECK(std::abs(h(1, 1)) < 1e-15);
  CHECK(std::abs(h(2, 2) - 0.3) < 1e-15);
  // <m+1|H|m> with theta = kappa (2m + 1) / (2j)
  CHECK(std::abs(h(0, 1) - 0.05 * c * g(0.3)) < 1e-15);
  CHECK(std::abs(h(1, 2) - 0.05 * c * g(-0.3)) < 1e-15);
  CHECK(std::abs(h(0, 2)) == 0.0);
  CHECK(max_abs(h - h.adjoint()) < 1e-15);
}

TEST_CASE("dressing factor is smooth through theta = 0") {
  CHECK(bch_dressing(0.0) == Complex(1.0, 0.0));
  for (double t : {1e-7, -3e-7, 2e-6, 1e-5}) {
    const Complex exact(0.5 * t / std::tan(0.5 * t), 0.5 * t);
    CHECK(std::abs(bch_dressing(t) - exact) < 1e-14);
  }
  CHECK(std::abs(bch_dressing(1.0) - Complex(0.5 / std::tan(0.5), 0.5)) < 1e-15);
}

TEST_CASE("zero twist reduces to p Jx exactly") {
  const auto ops = build_operators(SpinSystem::from_j(40.0));
  const KickedTopParams par{0.1, 0.0, 1.0};
  const Matrix h = build_effective_hamiltonian(ops, par);
  CHECK(max_abs(h - par.p * ops.jx) < 1e-15);
  CHECK(max_distance(40.0, 0.1, 0.0) < 1e-12);
}

TEST_CASE("effective Hamiltonian reproduces F to first order in p") {
  const auto ops = build_operators(SpinSystem::from_j(5.0));
  double previous = 0.0;
  for (double p : {0.04, 0.02, 0.01}) {
    const KickedTopParams par{p, 0.7, 1.0};
    const double err =
        max_abs(unitary_from_hermitian(build_effective_hamiltonian(ops, par)) - build_floquet(ops, par));
    if (previous > 0.0) CHECK(previous / err == doctest::Approx(4.0).epsilon(0.1));
    previous = err;
  }
}

TEST_CASE("spectral accuracy improves monotonically as p shrinks") {
  const double d1 = max_distance(40.0, 0.1, 0.2);
  const double d2 = max_distance(40.0, 0.05, 0.2);
  const double d3 = max_distance(40.0, 0.025, 0.2);
  CHECK(d1 > d2);
  CHECK(d2 > d3);
}

TEST_CASE("H_E commutes with the pi rotation about x") {
  const auto ops = build_operators(SpinSystem::from_j(40.0));
  const Matrix parity = FloquetBuilder(ops).kick(kPi);
  const Matrix h = build_effective_hamiltonian(ops, KickedTopParams{0.1, 0.2, 1.0});
  CHECK(max_abs(parity * h - h * parity) < 1e-10);
}

TEST_CASE("singular resummation raises") {
  const auto ops = build_operators(SpinSystem::from_j(1.0));
  // m = 0: theta = kappa / 2 = 2 pi
  try {
    build_effective_hamiltonian(ops, KickedTopParams{0.1, 4.0 * kPi, 1.0});
    FAIL("expected a singularity");
  } catch (const SingularityError& e) {
    CHECK(e.m() == 0.0);
    CHECK(e.l() == 1);
  }
  CHECK_NOTHROW(build_effective_hamiltonian(ops, KickedTopParams{0.1, 4.0 * kPi + 1e-3, 1.0}));
}

TEST_CASE("folding and circular distance") {
  const double w = 2.0 * kPi;
  CHECK(fold_quasienergy(4.0, w) == doctest::Approx(4.0 - w));
  CHECK(fold_quasienergy(4.0, w) == doctest::Approx(-2.28319).epsilon(1e-5));
  CHECK(fold_quasienergy(-kPi, w) == doctest::Approx(-kPi));
  CHECK(fold_quasienergy(kPi, w) == doctest::Approx(-kPi));
  CHECK(fold_quasienergy(-7.0 * kPi + 0.1, w) == doctest::Approx(-kPi + 0.1));
  CHECK(circular_distance(-3.1, 3.1, w) == doctest::Approx(w - 6.2));
  CHECK(circular_distance(0.2, 0.5, w) == doctest::Approx(0.3));
}

TEST_CASE("effective spectrum is ordered and folded") {
  const auto ops = build_operators(SpinSystem::from_j(40.0));
  const KickedTopParams par{0.1, 0.2, 2.0};
  const auto eff = effective_spectrum(build_effective_hamiltonian(ops, par), par);
  for (Eigen::Index a = 0; a < eff.unfolded.size(); ++a) {
    if (a > 0) CHECK(eff.unfolded[a] >= eff.unfolded[a - 1]);
    CHECK(eff.folded[a] == doctest::Approx(fold_quasienergy(eff.unfolded[a], par.omega())));
  }
}

TEST_CASE("cyclic matching is optimal against brute force") {
  FloquetSpectrum exact;
  exact.period = 1.0;
  exact.quasienergies.resize(5);
  exact.quasienergies << -3.0, -1.2, 0.1, 1.9, 3.05;
  EffectiveSpectrum eff;
  eff.unfolded.resize(5);
  eff.unfolded << -2.1, 0.05, 1.85, 3.2, 5.0;
  eff.folded.resize(5);
  for (int a = 0; a < 5; ++a) eff.folded[a] = fold_quasienergy(eff.unfolded[a], exact.omega());

  const auto report = match_spectra(exact, eff);
  std::vector<int> perm(5);
  std::iota(perm.begin(), perm.end(), 0);
  double best = 1e300;
  do {
    double total = 0.0;
    for (int a = 0; a < 5; ++a) {
      total += circular_distance(eff.folded[a], exact.quasienergies[perm[a]], exact.omega());
    }
    best = std::min(best, total);
  } while (std::next_permutation(perm.begin(), perm.end()));
  CHECK(report.mean_circular_distance * 5.0 == doctest::Approx(best).epsilon(1e-12));
  std::vector<int> sorted = report.pairing;
  std::sort(sorted.begin(), sorted.end());
  for (int k = 0; k < 5; ++k) CHECK(sorted[k] == k);
}
