#pragma once

#include <functional>
#include <string>
#include <vector>

#include "kicked_top/floquet.hpp"
#include "kicked_top/semiclassics.hpp"
#include "kicked_top/spin_algebra.hpp"

namespace kt {

struct ModeMagnetization {
  int mode = 0;              // column in FloquetSpectrum::modes
  double energy = 0.0;       // <Phi|H_E|Phi> / T
  double magnetization = 0.0;  // <Phi|Jx|Phi> / j
};

enum class Branch { saddle_to_minimum, saddle_to_maximum };

std::string to_string(Branch branch);

struct ProtocolResult {
  Branch branch = Branch::saddle_to_minimum;
  StereoCoord gamma0;
  BlochVector location;
  double qel_energy = 0.0;    // j * E_G(gamma0) / T
  double mean_quasienergy = 0.0;
  double xbar_quantum = 0.0;
  double xbar_classical = 0.0;
  double participation_ratio = 0.0;
};

inline constexpr int kDefaultProtocolSteps = 700;

/// Magnetization and mean effective energy of every Floquet mode, sorted by energy.
std::vector<ModeMagnetization> mode_magnetization(const FloquetSpectrum& spectrum,
                                                  const OperatorSet& ops,
                                                  const Matrix& h_eff);

/// Calls visit(l, psi_l) for psi_l = F^l psi_0, l = 0..K. Rejects non-normalized input.
void for_each_stroboscopic_state(const Vector& state0, const Matrix& floquet, int steps,
                                 const std::function<void(int, const Vector&)>& visit);

std::vector<Vector> stroboscopic_evolve(const Vector& state0, const Matrix& floquet, int steps);

/// (K+1)^-1 sum_l <psi_l|A|psi_l>.
double time_averaged_observable(const Vector& state0, const Matrix& floquet,
                                const Matrix& observable, int steps);

/// 1 / sum_a |<Phi_a|psi>|^4.
double participation_ratio(const Vector& state0, const Matrix& modes);

/// Initial points along the gradient-flow path from the saddle to the minimum
/// (descent) or to a maximum (ascent), evenly spaced in E_G, endpoints included.
std::vector<BlochVector> protocol_path(const KickedTopParams& par, const CriticalSet& crit,
                                       Branch branch, int n_points);

std::vector<ProtocolResult> run_protocol(const KickedTopParams& par, const SpinSystem& sys,
                                         Branch branch, int n_points,
                                         int steps = kDefaultProtocolSteps);

}  // namespace kt
