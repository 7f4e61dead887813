#include "kicked_top/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "kicked_top/effective_model.hpp"
#include "kicked_top/errors.hpp"
#include "kicked_top/parallel.hpp"

namespace kt {

namespace {

constexpr double kFlowStep = 2e-3;
constexpr double kFlowStartOffset = 1e-6;
constexpr int kFlowMaxSteps = 20000;

void require_normalized(const Vector& psi) {
  if (std::abs(psi.norm() - 1.0) > 1e-9) throw ConfigError("initial state is not normalized");
}

Eigen::Vector3d as_vec(const BlochVector& r) { return {r.x, r.y, r.z}; }
BlochVector as_bloch(const Eigen::Vector3d& v) {
  const Eigen::Vector3d n = v.normalized();
  return {n[0], n[1], n[2]};
}

// Unit-speed gradient flow direction on the sphere; zero at critical points.
Eigen::Vector3d flow_direction(const Eigen::Vector3d& r, double sign, const KickedTopParams& par) {
  const auto t = qel_tangent_gradient(as_bloch(r), par);
  const Eigen::Vector3d g(t[0], t[1], t[2]);
  const double n = g.norm();
  if (n == 0.0) return Eigen::Vector3d::Zero();
  return sign * g / n;
}

// Several observables averaged over one stroboscopic trajectory.
std::vector<double> time_averages(const Vector& state0, const Matrix& floquet,
                                  const std::vector<const Matrix*>& observables, int steps) {
  std::vector<double> sums(observables.size(), 0.0);
  for_each_stroboscopic_state(state0, floquet, steps, [&](int, const Vector& psi) {
    for (std::size_t k = 0; k < observables.size(); ++k) sums[k] += expectation(psi, *observables[k]);
  });
  for (double& s : sums) s /= (steps + 1.0);
  return sums;
}

}  // namespace

std::string to_string(Branch branch) {
  return branch == Branch::saddle_to_minimum ? "S->m" : "S->M";
}

std::vector<ModeMagnetization> mode_magnetization(const FloquetSpectrum& spectrum,
                                                  const OperatorSet& ops,
                                                  const Matrix& h_eff) {
  const int n = spectrum.dim();
  if (ops.system.dim() != n || h_eff.rows() != n) throw ConfigError("dimension mismatch");
  std::vector<ModeMagnetization> out(n);
  for (int a = 0; a < n; ++a) {
    const Vector phi = spectrum.modes.col(a);
    out[a].mode = a;
    out[a].energy = expectation(phi, h_eff) / spectrum.period;
    out[a].magnetization = expectation(phi, ops.jx) / ops.system.j();
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.energy < b.energy; });
  return out;
}

void for_each_stroboscopic_state(const Vector& state0, const Matrix& floquet, int steps,
                                 const std::function<void(int, const Vector&)>& visit) {
  if (steps < 0) throw ConfigError("K must be non-negative");
  if (floquet.rows() != state0.size()) throw ConfigError("dimension mismatch");
  require_normalized(state0);
  Vector psi = state0;
  Vector next(psi.size());
  for (int l = 0; l <= steps; ++l) {
    visit(l, psi);
    if (l < steps) {
      next.noalias() = floquet * psi;
      psi.swap(next);
    }
  }
}

std::vector<Vector> stroboscopic_evolve(const Vector& state0, const Matrix& floquet, int steps) {
  std::vector<Vector> states;
  states.reserve(static_cast<std::size_t>(std::max(steps, 0)) + 1);
  for_each_stroboscopic_state(state0, floquet, steps,
                              [&](int, const Vector& psi) { states.push_back(psi); });
  return states;
}

double time_averaged_observable(const Vector& state0, const Matrix& floquet,
                                const Matrix& observable, int steps) {
  return time_averages(state0, floquet, {&observable}, steps)[0];
}

double participation_ratio(const Vector& state0, const Matrix& modes) {
  const Vector a = modes.adjoint() * state0;
  double s4 = 0.0;
  for (Eigen::Index k = 0; k < a.size(); ++k) s4 += std::pow(std::norm(a[k]), 2);
  return 1.0 / s4;
}

std::vector<BlochVector> protocol_path(const KickedTopParams& par, const CriticalSet& crit,
                                       Branch branch, int n_points) {
  if (n_points < 2) throw ConfigError("points must be at least 2");
  if (crit.regime != Regime::above) {
    throw ConfigError("the measurement protocol needs a saddle (kappa > p)");
  }
  const CriticalPoint& saddle = crit.first_of(CriticalKind::saddle);
  const bool ascend = branch == Branch::saddle_to_maximum;
  const double sign = ascend ? 1.0 : -1.0;

  // Unstable (ascent) or stable (descent) Hessian direction, mapped to the sphere.
  const QelDerivatives d = qel_grad_hess(StereoCoord::finite(saddle.chart_gamma), par, saddle.chart);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig(d.hessian);
  const Eigen::Vector2d dir = eig.eigenvectors().col(ascend ? 1 : 0);
  const double h = 1e-6;
  const Complex step(h * dir[0], h * dir[1]);
  Eigen::Vector3d tangent = (as_vec(bloch_from_chart(saddle.chart_gamma + step, saddle.chart)) -
                             as_vec(bloch_from_chart(saddle.chart_gamma - step, saddle.chart)))
                                .normalized();
  if ((ascend ? tangent[2] : tangent[1]) < 0.0) tangent = -tangent;

  struct Sample {
    double energy;
    Eigen::Vector3d r;
  };
  const Eigen::Vector3d start = as_vec(saddle.location);
  std::vector<Sample> path{{qel_value(saddle.location, par), start}};

  Eigen::Vector3d r = (start + kFlowStartOffset * tangent).normalized();
  path.push_back({qel_value(as_bloch(r), par), r});
  for (int k = 0; k < kFlowMaxSteps; ++k) {
    const auto f = [&](const Eigen::Vector3d& x) { return flow_direction(x, sign, par); };
    const Eigen::Vector3d k1 = f(r);
    const Eigen::Vector3d k2 = f((r + 0.5 * kFlowStep * k1).normalized());
    const Eigen::Vector3d k3 = f((r + 0.5 * kFlowStep * k2).normalized());
    const Eigen::Vector3d k4 = f((r + kFlowStep * k3).normalized());
    const Eigen::Vector3d next = (r + kFlowStep / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)).normalized();
    const double e = qel_value(as_bloch(next), par);
    if (sign * (e - path.back().energy) <= 0.0) break;
    path.push_back({e, next});
    r = next;
  }

  // Close the path on the extremum the flow was heading to.
  const CriticalPoint* target = nullptr;
  const auto candidates = crit.all_of(ascend ? CriticalKind::maximum : CriticalKind::minimum);
  for (const CriticalPoint* cp : candidates) {
    if (!target || (as_vec(cp->location) - r).norm() < (as_vec(target->location) - r).norm()) {
      target = cp;
    }
  }
  const double e_target = qel_value(target->location, par);
  if (sign * (e_target - path.back().energy) > 0.0) {
    path.push_back({e_target, as_vec(target->location)});
  } else {
    path.back() = {e_target, as_vec(target->location)};
  }

  const double e0 = path.front().energy;
  const double e1 = path.back().energy;
  std::vector<BlochVector> out;
  out.reserve(n_points);
  std::size_t seg = 0;
  for (int k = 0; k < n_points; ++k) {
    if (k == 0) {
      out.push_back(as_bloch(path.front().r));
      continue;
    }
    if (k == n_points - 1) {
      out.push_back(target->location);
      continue;
    }
    const double e = e0 + (e1 - e0) * k / (n_points - 1.0);
    while (seg + 2 < path.size() && sign * (path[seg + 1].energy - e) < 0.0) ++seg;
    const Sample& a = path[seg];
    const Sample& b = path[seg + 1];
    const double t = (e - a.energy) / (b.energy - a.energy);
    out.push_back(as_bloch(a.r + t * (b.r - a.r)));
  }
  return out;
}

std::vector<ProtocolResult> run_protocol(const KickedTopParams& par, const SpinSystem& sys,
                                         Branch branch, int n_points, int steps) {
  par.validate();
  if (!(par.kappa > par.p)) throw ConfigError("the measurement protocol needs kappa > p");
  if (steps < 0) throw ConfigError("K must be non-negative");

  const OperatorSet ops = build_operators(sys);
  const Matrix floquet = build_floquet(ops, par);
  const FloquetSpectrum spectrum = diagonalize_floquet(floquet, par.period);
  const Matrix h_eff = build_effective_hamiltonian(ops, par);
  const Matrix mag = ops.jx / sys.j();
  const CriticalSet crit = find_critical_points(par, sys);
  const std::vector<BlochVector> points = protocol_path(par, crit, branch, n_points);

  std::vector<ProtocolResult> results(points.size());
  parallel_for(points.size(), [&](std::size_t i) {
    ProtocolResult& res = results[i];
    res.branch = branch;
    res.location = points[i];
    res.gamma0 = gamma_from_bloch(points[i]);
    res.qel_energy = sys.j() * qel_value(points[i], par) / par.period;
    const Vector psi = coherent_state(sys, points[i]);
    const auto avg = time_averages(psi, floquet, {&h_eff, &mag}, steps);
    res.mean_quasienergy = avg[0] / par.period;
    res.xbar_quantum = avg[1];
    res.xbar_classical = classical_time_average(res.gamma0, par, steps);
    res.participation_ratio = participation_ratio(psi, spectrum.modes);
  });
  return results;
}

}  // namespace kt
