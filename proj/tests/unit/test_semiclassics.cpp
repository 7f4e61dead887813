#include <doctest.h>

#include <cmath>
#include <numbers>

#ifdef KT_HAVE_BOOST_QUADRATURE
#include <boost/math/quadrature/tanh_sinh.hpp>
#endif

#include "kicked_top/effective_model.hpp"
#include "kicked_top/errors.hpp"
#include "kicked_top/semiclassics.hpp"

using namespace kt;

namespace {

constexpr double kPi = std::numbers::pi;

const KickedTopParams kRef{0.1, 0.2, 1.0};

double qel_in_chart(Complex g, Chart chart, const KickedTopParams& par) {
  return qel_value(bloch_from_chart(g, chart), par);
}

}  // namespace

TEST_CASE("landscape values at the poles") {
  CHECK(qel_value(BlochVector{1.0, 0.0, 0.0}, kRef) == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(qel_value(BlochVector{-1.0, 0.0, 0.0}, kRef) == doctest::Approx(-0.1).epsilon(1e-15));
  // Z = 1: kappa/2 plus the regular xcot branch
  const double z = 1.0;
  CHECK(qel_value(BlochVector{0.0, 0.0, z}, kRef) == doctest::Approx(0.1).epsilon(1e-15));
  // Z-Y coupling term
  const double s = std::sqrt(0.5);
  const double expect = 0.1 * s * s - 0.01 * s * s;
  CHECK(qel_value(BlochVector{0.0, s, s}, kRef) == doctest::Approx(expect).epsilon(1e-14));
}

TEST_CASE("chart derivatives agree with central finite differences") {
  const double h = 1e-4;
  for (Chart chart : {Chart::standard, Chart::antipodal}) {
    for (const Complex g : {Complex(0.2, -0.3), Complex(-0.7, 0.4), Complex(1.3, 0.9)}) {
      CAPTURE(g);
      CAPTURE(to_string(chart));
      auto f = [&](double du, double dv) { return qel_in_chart(g + Complex(du, dv), chart, kRef); };
      const auto d = qel_grad_hess(StereoCoord::finite(g), kRef, chart);
      CHECK(d.chart == chart);
      CHECK(d.value == doctest::Approx(f(0, 0)).epsilon(1e-14));
      CHECK(std::abs(d.gradient[0] - (f(h, 0) - f(-h, 0)) / (2 * h)) < 1e-8);
      CHECK(std::abs(d.gradient[1] - (f(0, h) - f(0, -h)) / (2 * h)) < 1e-8);
      const double huu = (f(h, 0) - 2 * f(0, 0) + f(-h, 0)) / (h * h);
      const double hvv = (f(0, h) - 2 * f(0, 0) + f(0, -h)) / (h * h);
      const double huv = (f(h, h) - f(h, -h) - f(-h, h) + f(-h, -h)) / (4 * h * h);
      CHECK(std::abs(d.hessian(0, 0) - huu) < 1e-5);
      CHECK(std::abs(d.hessian(1, 1) - hvv) < 1e-5);
      CHECK(std::abs(d.hessian(0, 1) - huv) < 1e-5);
      CHECK(d.hessian(0, 1) == doctest::Approx(d.hessian(1, 0)));
    }
  }
}

TEST_CASE("tangent gradient matches a directional derivative") {
  const BlochVector r{0.48, -0.6, 0.64};
  const auto g = qel_tangent_gradient(r, kRef);
  CHECK(std::abs(g[0] * r.x + g[1] * r.y + g[2] * r.z) < 1e-14);
  // direction tangent at r
  const double t[3] = {0.8, 0.64, 0.0};
  const double tn = std::sqrt(t[0] * t[0] + t[1] * t[1]);
  const double u[3] = {t[0] / tn, t[1] / tn, 0.0};
  const double h = 1e-6;
  auto at = [&](double s) {
    BlochVector q{r.x * std::cos(s) + u[0] * std::sin(s), r.y * std::cos(s) + u[1] * std::sin(s),
                  r.z * std::cos(s) + u[2] * std::sin(s)};
    return qel_value(q, kRef);
  };
  const double fd = (at(h) - at(-h)) / (2 * h);
  CHECK(std::abs(fd - (g[0] * u[0] + g[1] * u[1] + g[2] * u[2])) < 1e-8);
}

TEST_CASE("critical points at the reference parameters") {
  const auto sys = SpinSystem::from_j(40.0);
  const auto crit = find_critical_points(kRef, sys);
  REQUIRE(crit.points.size() == 4);
  CHECK(crit.regime == Regime::above);

  const auto& s = crit.first_of(CriticalKind::saddle);
  CHECK(s.location.x == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(s.eps_folded == doctest::Approx(4.0 - 2 * kPi).epsilon(1e-12));
  CHECK(s.beta == 0);
  CHECK(s.amplitude == doctest::Approx(0.0396).epsilon(0.02));

  const auto& m = crit.first_of(CriticalKind::minimum);
  CHECK(m.location.x == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(m.gamma.is_infinite());
  CHECK(m.chart == Chart::antipodal);
  CHECK(m.beta == -2);
  CHECK(m.eps_folded == doctest::Approx(2 * kPi - 4.0).epsilon(1e-12));

  const auto maxima = crit.all_of(CriticalKind::maximum);
  REQUIRE(maxima.size() == 2);
  CHECK(std::abs(maxima[0]->e_unfolded - maxima[1]->e_unfolded) < 1e-8);
  CHECK(maxima[0]->beta == 2);
  // mirror images under the pi rotation about x
  CHECK(maxima[0]->location.x == doctest::Approx(maxima[1]->location.x).epsilon(1e-10));
  CHECK(maxima[0]->location.z == doctest::Approx(-maxima[1]->location.z).epsilon(1e-10));

  for (const auto& cp : crit.points) {
    const auto d = qel_grad_hess(StereoCoord::finite(cp.chart_gamma), kRef, cp.chart);
    CHECK(d.gradient.norm() < 1e-10);
    CHECK(cp.e_unfolded == doctest::Approx(40.0 * d.value).epsilon(1e-12));
    CHECK(cp.eps_folded == doctest::Approx(fold_quasienergy(cp.e_unfolded, kRef.omega())));
  }
}

TEST_CASE("critical values agree with a brute-force grid scan") {
  const int nt = 800, np = 1600;
  double lo = 1e300, hi = -1e300;
  for (int a = 0; a <= nt; ++a) {
    const double th = kPi * a / nt;
    for (int b = 0; b < np; ++b) {
      const double ph = 2 * kPi * b / np;
      const double e = qel_value(
          BlochVector{std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th)}, kRef);
      lo = std::min(lo, e);
      hi = std::max(hi, e);
    }
  }
  const auto crit = find_critical_points(kRef, SpinSystem::from_j(40.0));
  const double e_max = crit.first_of(CriticalKind::maximum).e_unfolded / 40.0;
  const double e_min = crit.first_of(CriticalKind::minimum).e_unfolded / 40.0;
  CHECK(e_max >= hi);
  CHECK(e_max - hi < 1e-5);
  CHECK(e_min <= lo);
  CHECK(lo - e_min < 1e-5);
}

TEST_CASE("bifurcation census") {
  const auto sys = SpinSystem::from_j(40.0);
  const auto below = find_critical_points(KickedTopParams{0.1, 0.05, 1.0}, sys);
  CHECK(below.regime == Regime::below);
  REQUIRE(below.points.size() == 2);
  CHECK(below.points[0].kind == CriticalKind::minimum);
  CHECK(below.points[1].kind == CriticalKind::maximum);
  CHECK(below.points[1].location.x == doctest::Approx(1.0));
  CHECK(find_critical_points(KickedTopParams{0.1, 0.3, 1.0}, sys).points.size() == 4);
}

TEST_CASE("amplitudes and Morse indices") {
  const auto crit = find_critical_points(kRef, SpinSystem::from_j(40.0));
  double a_max = 0.0;
  for (const auto* cp : crit.all_of(CriticalKind::maximum)) a_max += cp->amplitude;
  CHECK(a_max == doctest::Approx(0.046).epsilon(0.05));
  CHECK(crit.first_of(CriticalKind::minimum).amplitude == doctest::Approx(0.023).epsilon(0.05));

  // amplitude formula on a synthetic Hessian
  Eigen::Matrix2d hess;
  hess << -2.0, 0.5, 0.5, -1.0;
  const auto ai = critical_amplitude(Complex(0.0, 0.0), hess, SpinSystem::from_j(10.0));
  CHECK(ai.beta == 2);
  CHECK(ai.amplitude == doctest::Approx(2.0 / (kPi * 10.0 * std::sqrt(1.75))).epsilon(1e-14));
  hess(0, 0) = 2.0;
  CHECK(critical_amplitude(Complex(0.0, 0.0), hess, SpinSystem::from_j(10.0)).beta == 0);
}

TEST_CASE("analytic DOQS: jumps, log divergence and normalization") {
  const auto crit = find_critical_points(kRef, SpinSystem::from_j(40.0));
  auto rho = [&](double e) { return analytic_doqs_value(e, crit, kRef); };

  for (const auto& cp : crit.points) {
    if (cp.kind == CriticalKind::saddle) continue;
    const double d = 1e-7;
    const double jump = rho(cp.eps_folded + d) - rho(cp.eps_folded - d);
    const double expect = cp.kind == CriticalKind::maximum ? 2.0 * jump_magnitude(cp)
                                                           : jump_magnitude(cp);
    CHECK(jump == doctest::Approx(expect).epsilon(1e-4));
  }
  const auto& s = crit.first_of(CriticalKind::saddle);
  CHECK_THROWS_AS(jump_magnitude(s), ConfigError);
  const double d1 = 1e-6, d2 = 1e-4;
  CHECK(rho(s.eps_folded + d1) - rho(s.eps_folded + d2) ==
        doctest::Approx(s.amplitude * std::log(d2 / d1)).epsilon(1e-3));
  CHECK(rho(s.eps_folded - d1) - rho(s.eps_folded - d2) ==
        doctest::Approx(s.amplitude * std::log(d2 / d1)).epsilon(1e-3));
  CHECK(log_divergence_approx(s.eps_folded + 0.01, 0.04, s.eps_folded) ==
        doctest::Approx(-0.04 * std::log(0.01)));

  const auto curve = clipped(analytic_doqs(crit, kRef, std::vector<double>{s.eps_folded, 0.0}), 50.0);
  CHECK(curve.rho[0] == 50.0);
  CHECK(curve.source == "analytic");

#ifdef KT_HAVE_BOOST_QUADRATURE
  std::vector<double> cuts{-kPi};
  for (const auto& cp : crit.points) cuts.push_back(cp.eps_folded);
  cuts.push_back(kPi);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end(),
                         [](double a, double b) { return std::abs(a - b) < 1e-12; }),
             cuts.end());
  boost::math::quadrature::tanh_sinh<double> integrator;
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    total += integrator.integrate(rho, cuts[k], cuts[k + 1]);
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-6));
#endif
}

TEST_CASE("classical map") {
  BlochVector r{0.3, -0.4, std::sqrt(1.0 - 0.25)};
  for (int k = 0; k < 100000; ++k) r = classical_kick_map(r, kRef);
  CHECK(std::abs(r.norm() - 1.0) < 1e-12);

  const auto fixed = classical_kick_map(BlochVector{1.0, 0.0, 0.0}, kRef);
  CHECK(std::abs(fixed.x - 1.0) < 1e-15);
  CHECK(classical_time_average(StereoCoord::finite(0.0), kRef, 700) == doctest::Approx(1.0));
  CHECK(classical_time_average(StereoCoord::infinity(), kRef, 700) == doctest::Approx(-1.0));

  const Complex g(0.3, -0.2);
  const auto via_gamma = bloch_from_gamma(classical_kick_map(StereoCoord::finite(g), kRef));
  const auto via_bloch = classical_kick_map(bloch_from_gamma(StereoCoord::finite(g)), kRef);
  CHECK(via_gamma.x == doctest::Approx(via_bloch.x).epsilon(1e-12));
  CHECK(via_gamma.z == doctest::Approx(via_bloch.z).epsilon(1e-12));
}

TEST_CASE("linearized map at (1,0,0) loses stability as kappa crosses p") {
  auto trace_at = [](double kappa) {
    const KickedTopParams par{0.1, kappa, 1.0};
    const double h = 1e-6;
    auto step = [&](double y, double z) {
      const double x = std::sqrt(1.0 - y * y - z * z);
      return classical_kick_map(BlochVector{x, y, z}, par);
    };
    const auto py = step(h, 0.0), my = step(-h, 0.0);
    const auto pz = step(0.0, h), mz = step(0.0, -h);
    return (py.y - my.y) / (2 * h) + (pz.z - mz.z) / (2 * h);
  };
  CHECK(std::abs(trace_at(0.09)) < 2.0);
  CHECK(std::abs(trace_at(0.05)) < 2.0);
  CHECK(std::abs(trace_at(0.11)) > 2.0);
  CHECK(std::abs(trace_at(0.2)) > 2.0);
  // flip sits at 2 tan(p/2), within 1e-4 of p
  CHECK(std::abs(trace_at(2 * std::tan(0.05) - 1e-5)) < 2.0);
  CHECK(std::abs(trace_at(2 * std::tan(0.05) + 1e-5)) > 2.0);
}
