#include "kicked_top/spectral_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "kicked_top/effective_model.hpp"
#include "kicked_top/errors.hpp"

namespace kt {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kMinFitPoints = 6;

}  // namespace

int default_bins(int dim) { return 2 * dim - 1; }

std::vector<double> zone_grid(int n, double omega) {
  if (n < 1) throw ConfigError("grid size must be positive");
  std::vector<double> grid(n);
  const double h = omega / n;
  for (int i = 0; i < n; ++i) grid[i] = -0.5 * omega + (i + 0.5) * h;
  return grid;
}

DoqsCurve doqs_histogram(const FloquetSpectrum& spectrum, int bins) {
  if (bins < 2) throw ConfigError("bins must be at least 2");
  const double omega = spectrum.omega();
  const double width = omega / bins;
  const int dim = spectrum.dim();

  std::vector<int> counts(bins, 0);
  for (Eigen::Index a = 0; a < spectrum.quasienergies.size(); ++a) {
    const double offset = spectrum.quasienergies[a] + 0.5 * omega;
    const int bin = std::clamp(static_cast<int>(std::floor(offset / width)), 0, bins - 1);
    ++counts[bin];
  }

  DoqsCurve curve;
  curve.grid = zone_grid(bins, omega);
  curve.omega = omega;
  curve.source = "histogram";
  curve.bins = bins;
  curve.rho.resize(bins);
  curve.n_integrated.resize(bins);
  int cumulative = 0;
  for (int b = 0; b < bins; ++b) {
    curve.rho[b] = counts[b] / (dim * width);
    cumulative += counts[b];
    curve.n_integrated[b] = static_cast<double>(cumulative) / dim;
  }
  return curve;
}

DoqsCurve doqs_from_traces(std::span<const Complex> traces, std::span<const double> grid,
                           double sigma, int dim, double period) {
  if (!(sigma > 0.0)) throw ConfigError("sigma must be positive");
  if (dim < 1) throw ConfigError("dimension must be positive");
  if (!(period > 0.0)) throw ConfigError("T must be positive");

  std::vector<Complex> damped(traces.size());
  for (std::size_t k = 0; k < traces.size(); ++k) {
    const double n = static_cast<double>(k + 1);
    damped[k] = traces[k] * std::exp(-0.5 * n * n * sigma * sigma);
  }

  DoqsCurve curve;
  curve.grid.assign(grid.begin(), grid.end());
  curve.rho.reserve(grid.size());
  for (double eps : grid) {
    const double phase = eps * period;
    double series = 0.0;
    for (std::size_t k = 0; k < damped.size(); ++k) {
      series += (damped[k] * std::polar(1.0, (k + 1.0) * phase)).real();
    }
    curve.rho.push_back(period / kTwoPi * (1.0 + 2.0 * series / dim));
  }
  curve.omega = kTwoPi / period;
  curve.source = "traces";
  curve.n_max = static_cast<int>(traces.size());
  curve.sigma = sigma;
  return curve;
}

DoqsCurve integrated_doqs(DoqsCurve curve) {
  const std::size_t n = curve.size();
  if (n == 0 || curve.rho.size() != n) throw ConfigError("curve is empty or inconsistent");
  for (std::size_t i = 1; i < n; ++i) {
    if (!(curve.grid[i] > curve.grid[i - 1])) throw ConfigError("grid must be strictly ascending");
  }
  const double lo = -0.5 * curve.omega;
  // Periodic wrap segment from the last grid point (shifted down by omega) to the first.
  const double wrap_left = curve.grid[n - 1] - curve.omega;
  const double wrap_len = curve.grid[0] - wrap_left;
  const double rho_at_lo =
      curve.rho[n - 1] + (curve.rho[0] - curve.rho[n - 1]) * (lo - wrap_left) / wrap_len;

  curve.n_integrated.assign(n, 0.0);
  double acc = 0.5 * (rho_at_lo + curve.rho[0]) * (curve.grid[0] - lo);
  curve.n_integrated[0] = acc;
  for (std::size_t i = 1; i < n; ++i) {
    acc += 0.5 * (curve.rho[i - 1] + curve.rho[i]) * (curve.grid[i] - curve.grid[i - 1]);
    curve.n_integrated[i] = acc;
  }
  return curve;
}

double zone_total(const DoqsCurve& curve) {
  const std::size_t n = curve.size();
  if (n == 0) return 0.0;
  double acc = 0.5 * (curve.rho[n - 1] + curve.rho[0]) * (curve.grid[0] + curve.omega - curve.grid[n - 1]);
  for (std::size_t i = 1; i < n; ++i) {
    acc += 0.5 * (curve.rho[i - 1] + curve.rho[i]) * (curve.grid[i] - curve.grid[i - 1]);
  }
  return acc;
}

LogFit fit_log_divergence(const DoqsCurve& curve, double eps_saddle, double r_min,
                          double r_max) {
  if (!(r_min > 0.0) || !(r_max > r_min)) throw ConfigError("fit window must satisfy 0 < r_min < r_max");
  // Ordinary least squares on (t = -log r, rho).
  double s_t = 0.0, s_y = 0.0, s_tt = 0.0, s_ty = 0.0;
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < curve.size(); ++i) {
    const double r = circular_distance(curve.grid[i], eps_saddle, curve.omega);
    if (r < r_min || r > r_max) continue;
    const double t = -std::log(r);
    pts.emplace_back(t, curve.rho[i]);
    s_t += t;
    s_y += curve.rho[i];
    s_tt += t * t;
    s_ty += t * curve.rho[i];
  }
  const int n = static_cast<int>(pts.size());
  if (n < kMinFitPoints) {
    throw NumericalError("log-divergence fit window holds " + std::to_string(n) +
                         " points, need at least 6");
  }
  const double sxx = s_tt - s_t * s_t / n;
  if (!(sxx > 0.0)) throw NumericalError("log-divergence fit is degenerate");
  LogFit fit;
  fit.points = n;
  fit.amplitude = (s_ty - s_t * s_y / n) / sxx;
  fit.offset = (s_y - fit.amplitude * s_t) / n;
  double rss = 0.0;
  for (const auto& [t, y] : pts) {
    const double res = y - fit.amplitude * t - fit.offset;
    rss += res * res;
  }
  fit.amplitude_stderr = std::sqrt(rss / (n - 2) / sxx);
  return fit;
}

LogFit fit_log_divergence(const DoqsCurve& curve, double eps_saddle) {
  const double width = curve.size() > 0 ? curve.omega / static_cast<double>(curve.size()) : 0.0;
  return fit_log_divergence(curve, eps_saddle, 2.0 * width,
                            kDefaultFitMaxRadius * curve.omega / kTwoPi);
}

double estimate_jump(const DoqsCurve& curve, double eps_c, double window) {
  if (!(window > 0.0)) throw ConfigError("jump window must be positive");
  double up = 0.0, down = 0.0;
  int n_up = 0, n_down = 0;
  for (std::size_t i = 0; i < curve.size(); ++i) {
    const double d = fold_quasienergy(curve.grid[i] - eps_c, curve.omega);
    if (d > 0.0 && d <= window) {
      up += curve.rho[i];
      ++n_up;
    } else if (d < 0.0 && d >= -window) {
      down += curve.rho[i];
      ++n_down;
    }
  }
  if (n_up == 0 || n_down == 0) throw NumericalError("jump window contains no grid points");
  return up / n_up - down / n_down;
}

}  // namespace kt
