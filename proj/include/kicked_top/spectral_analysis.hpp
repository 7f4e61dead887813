#pragma once

#include <span>

#include "kicked_top/doqs_curve.hpp"
#include "kicked_top/floquet.hpp"

namespace kt {

/// Default histogram resolution, 2(2j+1) - 1 bins.
int default_bins(int dim);

inline constexpr double kDefaultFitMaxRadius = 0.25;
inline constexpr double kDefaultJumpWindow = 0.5;

/// Equal-width histogram over the zone; rho integrates to exactly one.
/// n_integrated[i] is the cumulative integral up to the right edge of bin i.
DoqsCurve doqs_histogram(const FloquetSpectrum& spectrum, int bins);

/// Cell-centred uniform grid of n points over [-omega/2, omega/2).
std::vector<double> zone_grid(int n, double omega);

/// Trace series rho(eps) = (T/2pi)[1 + (2/M) Re sum_n t_n e^{i n eps T} e^{-n^2 sigma^2/2}],
/// sigma in eps*T units.
DoqsCurve doqs_from_traces(std::span<const Complex> traces, std::span<const double> grid,
                           double sigma, int dim, double period);

/// Cumulative integral from -omega/2, treating rho as periodic and piecewise linear.
DoqsCurve integrated_doqs(DoqsCurve curve);

/// Integral of rho over the whole zone (periodic trapezoid).
double zone_total(const DoqsCurve& curve);

struct LogFit {
  double amplitude = 0.0;
  double offset = 0.0;
  double amplitude_stderr = 0.0;
  int points = 0;
};

/// Least squares rho = -A log|eps - eps_S| + c over r_min <= |eps - eps_S| <= r_max
/// (circular distance, both sides pooled). Needs at least six points.
LogFit fit_log_divergence(const DoqsCurve& curve, double eps_saddle, double r_min,
                          double r_max);

/// Default window: r_min two bin widths, r_max 0.25 (eps*T units).
LogFit fit_log_divergence(const DoqsCurve& curve, double eps_saddle);

/// Mean rho over (eps_c, eps_c + w] minus mean over [eps_c - w, eps_c).
double estimate_jump(const DoqsCurve& curve, double eps_c, double window);

}  // namespace kt
