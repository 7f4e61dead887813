#include "kicked_top/semiclassics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "kicked_top/effective_model.hpp"
#include "kicked_top/errors.hpp"
#include "kicked_top/jet.hpp"

namespace kt {

namespace {

using detail::Jet;
using detail::value_of;

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

constexpr int kSeedsAzimuth = 64;
constexpr int kSeedsPolar = 32;
constexpr int kNewtonIterations = 100;
constexpr double kNewtonMaxStep = 0.25;
constexpr double kDedupTolerance = 1e-6;
constexpr double kBifurcationGuard = 1e-6;

void check_cot_pole(double z, const KickedTopParams& par) {
  const double x = 0.5 * par.kappa * z;
  const long n = std::lround(x / kPi);
  if (n != 0 && std::abs(x - kPi * static_cast<double>(n)) < 1e-9) {
    std::ostringstream msg;
    msg << "quasienergy landscape has a cotangent pole at Z = " << z;
    throw NumericalError(msg.str());
  }
}

// x cot x, with its Taylor series near the removable singularity at x = 0.
template <class S>
S x_cot_x(const S& x) {
  using detail::cos;
  using detail::sin;
  if (std::abs(value_of(x)) < 1e-2) {
    const S x2 = x * x;
    return 1.0 - x2 * (1.0 / 3.0 + x2 * (1.0 / 45.0 + x2 * (2.0 / 945.0 + x2 * (1.0 / 4725.0))));
  }
  return x * cos(x) / sin(x);
}

template <class S>
S qel_formula(const S& x, const S& y, const S& z, const KickedTopParams& par) {
  check_cot_pole(value_of(z), par);
  const S half = 0.5 * par.kappa * z;
  return 0.5 * par.kappa * z * z + par.p * x * x_cot_x(half) - 0.5 * par.kappa * par.p * z * y;
}

template <class S>
std::array<S, 3> chart_map(const S& u, const S& v, Chart chart) {
  const S r2 = u * u + v * v;
  const S den = 1.0 + r2;
  std::array<S, 3> r{(1.0 - r2) / den, 2.0 * v / den, -2.0 * u / den};
  if (chart == Chart::antipodal) {
    for (auto& c : r) c = -c;
  }
  return r;
}

QelDerivatives chart_derivatives(Complex gamma, Chart chart, const KickedTopParams& par) {
  const auto u = Jet<2>::variable(gamma.real(), 0);
  const auto v = Jet<2>::variable(gamma.imag(), 1);
  const auto r = chart_map(u, v, chart);
  const Jet<2> e = qel_formula(r[0], r[1], r[2], par);
  QelDerivatives d;
  d.chart = chart;
  d.value = e.v;
  d.gradient = e.g;
  d.hessian = 0.5 * (e.h + e.h.transpose());
  return d;
}

Chart preferred_chart(const BlochVector& r) {
  return r.x >= 0.0 ? Chart::standard : Chart::antipodal;
}

Complex chart_coordinate(const BlochVector& r, Chart chart) {
  const BlochVector q = chart == Chart::standard ? r : BlochVector{-r.x, -r.y, -r.z};
  return gamma_from_bloch(q).value();
}

BlochVector normalized(BlochVector r) {
  const double n = r.norm();
  return {r.x / n, r.y / n, r.z / n};
}

std::optional<BlochVector> newton_refine(BlochVector r, const KickedTopParams& par) {
  for (int iter = 0; iter < kNewtonIterations; ++iter) {
    const Chart chart = preferred_chart(r);
    Complex g = chart_coordinate(r, chart);
    const QelDerivatives d = chart_derivatives(g, chart, par);
    if (!d.gradient.allFinite() || !d.hessian.allFinite()) return std::nullopt;

    Eigen::Vector2d step;
    if (std::abs(d.hessian.determinant()) > 1e-14) {
      step = -d.hessian.inverse() * d.gradient;
    } else {
      step = -d.gradient;
    }
    const double len = step.norm();
    if (len > kNewtonMaxStep) step *= kNewtonMaxStep / len;
    g += Complex(step[0], step[1]);
    r = bloch_from_chart(g, chart);
    if (len < 1e-14) return r;
  }
  // Accept a point that stalled at roundoff level.
  const Chart chart = preferred_chart(r);
  const QelDerivatives d = chart_derivatives(chart_coordinate(r, chart), chart, par);
  if (d.gradient.norm() < 1e-12) return r;
  return std::nullopt;
}

double distance(const BlochVector& a, const BlochVector& b) {
  return std::sqrt((a.x - b.x) * (a.x - b.x) + (a.y - b.y) * (a.y - b.y) +
                   (a.z - b.z) * (a.z - b.z));
}

int kind_rank(CriticalKind k) {
  switch (k) {
    case CriticalKind::minimum: return 0;
    case CriticalKind::saddle: return 1;
    case CriticalKind::maximum: return 2;
  }
  return 3;
}

}  // namespace

std::string to_string(CriticalKind kind) {
  switch (kind) {
    case CriticalKind::minimum: return "minimum";
    case CriticalKind::saddle: return "saddle";
    case CriticalKind::maximum: return "maximum";
  }
  return "unknown";
}

std::string to_string(Chart chart) {
  return chart == Chart::standard ? "standard" : "antipodal";
}

const CriticalPoint& CriticalSet::first_of(CriticalKind kind) const {
  for (const auto& cp : points) {
    if (cp.kind == kind) return cp;
  }
  throw ConfigError("no critical point of kind " + to_string(kind));
}

std::vector<const CriticalPoint*> CriticalSet::all_of(CriticalKind kind) const {
  std::vector<const CriticalPoint*> out;
  for (const auto& cp : points) {
    if (cp.kind == kind) out.push_back(&cp);
  }
  return out;
}

BlochVector bloch_from_chart(Complex gamma, Chart chart) {
  const auto r = chart_map(gamma.real(), gamma.imag(), chart);
  return {r[0], r[1], r[2]};
}

double qel_value(const BlochVector& r, const KickedTopParams& par) {
  if (std::abs(r.norm() - 1.0) > 1e-9) throw ConfigError("Bloch vector is not of unit length");
  return qel_formula(r.x, r.y, r.z, par);
}

QelDerivatives qel_grad_hess(const StereoCoord& g, const KickedTopParams& par, Chart chart) {
  if (g.is_infinite()) {
    const Chart other = chart == Chart::standard ? Chart::antipodal : Chart::standard;
    return chart_derivatives({}, other, par);
  }
  return chart_derivatives(g.value(), chart, par);
}

std::array<double, 3> qel_tangent_gradient(const BlochVector& r, const KickedTopParams& par) {
  const auto x = Jet<3>::variable(r.x, 0);
  const auto y = Jet<3>::variable(r.y, 1);
  const auto z = Jet<3>::variable(r.z, 2);
  const Eigen::Vector3d grad = qel_formula(x, y, z, par).g;
  const Eigen::Vector3d n(r.x, r.y, r.z);
  const Eigen::Vector3d t = grad - grad.dot(n) / n.squaredNorm() * n;
  return {t[0], t[1], t[2]};
}

AmplitudeIndex critical_amplitude(Complex chart_gamma, const Eigen::Matrix2d& hessian,
                                  const SpinSystem& sys) {
  const double det = hessian.determinant();
  if (!(std::abs(det) >= 1e-14)) {
    throw NumericalError("degenerate Hessian at critical point");
  }
  const double weight = 1.0 / std::pow(1.0 + std::norm(chart_gamma), 2);
  AmplitudeIndex out;
  out.amplitude = 2.0 * weight / (kPi * sys.j() * std::sqrt(std::abs(det)));
  const Eigen::Vector2d ev = Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d>(hessian).eigenvalues();
  const int negative = (ev[0] < 0.0) + (ev[1] < 0.0);
  out.beta = negative == 2 ? 2 : (negative == 0 ? -2 : 0);
  return out;
}

CriticalSet find_critical_points(const KickedTopParams& par, const SpinSystem& sys) {
  par.validate();
  if (std::abs(par.kappa - par.p) < kBifurcationGuard) {
    throw NumericalError("kappa = p is the bifurcation point; the Hessian is degenerate there");
  }
  CriticalSet set;
  set.regime = par.kappa < par.p ? Regime::below : Regime::above;

  std::vector<BlochVector> found;
  for (int a = 0; a < kSeedsAzimuth; ++a) {
    const double phi = kTwoPi * (a + 0.5) / kSeedsAzimuth;
    for (int b = 0; b < kSeedsPolar; ++b) {
      const double theta = kPi * (b + 0.5) / kSeedsPolar;
      const BlochVector seed{std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
                             std::cos(theta)};
      const auto r = newton_refine(seed, par);
      if (!r) continue;
      const bool duplicate = std::any_of(found.begin(), found.end(), [&](const BlochVector& q) {
        return distance(q, *r) < kDedupTolerance;
      });
      if (!duplicate) found.push_back(normalized(*r));
    }
  }

  for (const BlochVector& r : found) {
    CriticalPoint cp;
    cp.location = r;
    cp.gamma = gamma_from_bloch(r);
    cp.chart = preferred_chart(r);
    cp.chart_gamma = chart_coordinate(r, cp.chart);
    const QelDerivatives d = chart_derivatives(cp.chart_gamma, cp.chart, par);
    const AmplitudeIndex ai = critical_amplitude(cp.chart_gamma, d.hessian, sys);
    cp.amplitude = ai.amplitude;
    cp.beta = ai.beta;
    cp.kind = ai.beta == 2 ? CriticalKind::maximum
                           : (ai.beta == -2 ? CriticalKind::minimum : CriticalKind::saddle);
    cp.hessian_det = d.hessian.determinant();
    cp.e_unfolded = sys.j() * d.value / par.period;
    cp.eps_folded = fold_quasienergy(cp.e_unfolded, par.omega());
    set.points.push_back(cp);
  }

  std::sort(set.points.begin(), set.points.end(), [](const CriticalPoint& a, const CriticalPoint& b) {
    if (kind_rank(a.kind) != kind_rank(b.kind)) return kind_rank(a.kind) < kind_rank(b.kind);
    return a.location.z > b.location.z;
  });

  const auto count = [&](CriticalKind k) { return set.all_of(k).size(); };
  const bool ok = set.regime == Regime::below
                      ? (set.points.size() == 2 && count(CriticalKind::minimum) == 1 &&
                         count(CriticalKind::maximum) == 1)
                      : (set.points.size() == 4 && count(CriticalKind::minimum) == 1 &&
                         count(CriticalKind::saddle) == 1 && count(CriticalKind::maximum) == 2);
  if (!ok) {
    std::ostringstream msg;
    msg << "critical point census failed: found " << count(CriticalKind::minimum)
        << " minima, " << count(CriticalKind::saddle) << " saddles, "
        << count(CriticalKind::maximum) << " maxima for kappa "
        << (set.regime == Regime::below ? "< p" : "> p");
    throw NumericalError(msg.str());
  }
  return set;
}

double analytic_doqs_value(double eps, const CriticalSet& crit, const KickedTopParams& par) {
  double sum = 1.0 / kTwoPi;
  for (const auto& cp : crit.points) {
    double theta = std::fmod((eps - cp.e_unfolded) * par.period, kTwoPi);
    if (theta < 0.0) theta += kTwoPi;
    if (theta >= kTwoPi) theta -= kTwoPi;
    // Li_1(e^{i theta}) = -log(2 sin(theta/2)) + i (pi - theta)/2 on [0, 2 pi).
    // The phase e^{i beta pi/4} is 1 or +-i, applied exactly.
    switch (cp.beta) {
      case 0: sum += -cp.amplitude * std::log(2.0 * std::sin(0.5 * theta)); break;
      case 2: sum += -cp.amplitude * 0.5 * (kPi - theta); break;
      case -2: sum += cp.amplitude * 0.5 * (kPi - theta); break;
      default: throw ConfigError("critical index must be -2, 0 or 2");
    }
  }
  return par.period * sum;
}

DoqsCurve analytic_doqs(const CriticalSet& crit, const KickedTopParams& par,
                        std::span<const double> grid) {
  DoqsCurve curve;
  curve.grid.assign(grid.begin(), grid.end());
  curve.rho.reserve(grid.size());
  for (double eps : grid) curve.rho.push_back(analytic_doqs_value(eps, crit, par));
  curve.omega = par.omega();
  curve.source = "analytic";
  return curve;
}

DoqsCurve analytic_doqs(const KickedTopParams& par, const SpinSystem& sys,
                        std::span<const double> grid) {
  return analytic_doqs(find_critical_points(par, sys), par, grid);
}

DoqsCurve clipped(DoqsCurve curve, double limit) {
  for (double& r : curve.rho) r = std::clamp(r, -limit, limit);
  return curve;
}

double log_divergence_approx(double eps, double amplitude, double eps_saddle) {
  return -amplitude * std::log(std::abs(eps - eps_saddle));
}

double jump_magnitude(const CriticalPoint& cp, double period) {
  if (cp.kind == CriticalKind::saddle) {
    throw ConfigError("a saddle produces a logarithmic divergence, not a jump");
  }
  return -0.5 * cp.beta * kPi * cp.amplitude * period;
}

BlochVector classical_kick_map(const BlochVector& r, const KickedTopParams& par) {
  const double twist = par.kappa * r.z;
  const double ct = std::cos(twist), st = std::sin(twist);
  const double x1 = r.x * ct - r.y * st;
  const double y1 = r.x * st + r.y * ct;
  const double z1 = r.z;
  const double cp = std::cos(par.p), sp = std::sin(par.p);
  return normalized({x1, y1 * cp - z1 * sp, y1 * sp + z1 * cp});
}

StereoCoord classical_kick_map(const StereoCoord& g, const KickedTopParams& par) {
  return gamma_from_bloch(classical_kick_map(bloch_from_gamma(g), par));
}

double classical_time_average(const StereoCoord& g0, const KickedTopParams& par, int steps) {
  if (steps < 0) throw ConfigError("K must be non-negative");
  BlochVector r = bloch_from_gamma(g0);
  double sum = r.x;
  for (int l = 0; l < steps; ++l) {
    r = classical_kick_map(r, par);
    sum += r.x;
  }
  return sum / (steps + 1.0);
}

}  // namespace kt
