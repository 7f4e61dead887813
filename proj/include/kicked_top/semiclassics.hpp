#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "kicked_top/doqs_curve.hpp"
#include "kicked_top/floquet.hpp"
#include "kicked_top/spin_algebra.hpp"

namespace kt {

enum class CriticalKind { minimum, saddle, maximum };
enum class Regime { below, above };
/// Standard chart is centred on (1,0,0); the antipodal chart uses
/// gamma' = -1/conj(gamma) and covers the point at infinity.
enum class Chart { standard, antipodal };

std::string to_string(CriticalKind kind);
std::string to_string(Chart chart);

struct QelDerivatives {
  Chart chart = Chart::standard;
  double value = 0.0;
  Eigen::Vector2d gradient = Eigen::Vector2d::Zero();
  Eigen::Matrix2d hessian = Eigen::Matrix2d::Zero();
};

struct CriticalPoint {
  CriticalKind kind = CriticalKind::saddle;
  BlochVector location;
  StereoCoord gamma;       // standard-chart coordinate (may be infinite)
  Chart chart = Chart::standard;
  Complex chart_gamma{};   // coordinate in `chart`, where the Hessian was taken
  double e_unfolded = 0.0; // j * E_G / T
  double eps_folded = 0.0;
  int beta = 0;
  double amplitude = 0.0;
  double hessian_det = 0.0;
};

struct CriticalSet {
  std::vector<CriticalPoint> points;
  Regime regime = Regime::above;

  const CriticalPoint& first_of(CriticalKind kind) const;
  std::vector<const CriticalPoint*> all_of(CriticalKind kind) const;
};

struct AmplitudeIndex {
  double amplitude = 0.0;
  int beta = 0;
};

/// Quasienergy landscape E_G(X, Y, Z) on the unit sphere.
double qel_value(const BlochVector& r, const KickedTopParams& par);

/// Derivatives of E_G with respect to the chart coordinates (u, v), gamma = u + i v.
/// The point at infinity is evaluated at gamma' = 0 in the antipodal chart.
QelDerivatives qel_grad_hess(const StereoCoord& g, const KickedTopParams& par,
                             Chart chart = Chart::standard);

/// Gradient of E_G projected onto the tangent plane of the sphere at r.
std::array<double, 3> qel_tangent_gradient(const BlochVector& r, const KickedTopParams& par);

/// Bloch vector of chart coordinate gamma in the given chart.
BlochVector bloch_from_chart(Complex gamma, Chart chart);

CriticalSet find_critical_points(const KickedTopParams& par, const SpinSystem& sys);

/// Stationary-phase amplitude A_c and index beta_c of a nondegenerate critical point.
AmplitudeIndex critical_amplitude(Complex chart_gamma, const Eigen::Matrix2d& hessian,
                                  const SpinSystem& sys);

/// Semiclassical DOQS; raw values (+-inf exactly at a critical quasienergy).
double analytic_doqs_value(double eps, const CriticalSet& crit, const KickedTopParams& par);
DoqsCurve analytic_doqs(const CriticalSet& crit, const KickedTopParams& par,
                        std::span<const double> grid);
DoqsCurve analytic_doqs(const KickedTopParams& par, const SpinSystem& sys,
                        std::span<const double> grid);

/// Plot-friendly copy of a curve with |rho| clipped to `limit`.
DoqsCurve clipped(DoqsCurve curve, double limit = 1e3);

/// rho ~ -A_S log|eps - eps_S| near the saddle.
double log_divergence_approx(double eps, double amplitude, double eps_saddle);

/// rho(eps_c+) - rho(eps_c-) = -(beta/2) pi A_c (times T for densities per unit eps).
/// Rejects saddles.
double jump_magnitude(const CriticalPoint& cp, double period = 1.0);

/// One period of the classical top: twist about z by kappa Z, then kick about x by p.
BlochVector classical_kick_map(const BlochVector& r, const KickedTopParams& par);
StereoCoord classical_kick_map(const StereoCoord& g, const KickedTopParams& par);

/// Mean of X over the initial point and K iterates.
double classical_time_average(const StereoCoord& g0, const KickedTopParams& par, int steps);

}  // namespace kt
