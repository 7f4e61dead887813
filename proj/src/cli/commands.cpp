#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include <CLI11.hpp>

#include "kicked_top/cli.hpp"
#include "kicked_top/csv.hpp"
#include "kicked_top/effective_model.hpp"
#include "kicked_top/errors.hpp"
#include "kicked_top/floquet.hpp"
#include "kicked_top/parallel.hpp"
#include "kicked_top/protocol.hpp"
#include "kicked_top/semiclassics.hpp"
#include "kicked_top/spectral_analysis.hpp"
#include "kicked_top/version.hpp"

namespace kt::cli {

namespace {

constexpr int kSubcells = 32;

KickedTopParams params_of(const RunConfig& cfg, double kappa) {
  KickedTopParams par;
  par.p = cfg.p;
  par.kappa = kappa;
  par.period = cfg.period;
  par.validate();
  return par;
}

std::vector<double> kappa_values(const RunConfig& cfg) {
  if (cfg.kappa_sweep) return cfg.kappa_sweep->values();
  return {cfg.kappa};
}

csv::Writer start_document(const RunConfig& cfg) {
  csv::Writer w;
  for (const auto& [k, v] : cfg.metadata()) w.comment(k, v);
  return w;
}

// Cumulative integral of f at the right edge of every bin, midpoint rule on
// kSubcells sub-cells per bin.
template <class F>
std::vector<double> cumulative_at_edges(int bins, double omega, F&& f) {
  const double h = omega / (static_cast<double>(bins) * kSubcells);
  std::vector<double> out(bins);
  double acc = 0.0;
  for (int b = 0; b < bins; ++b) {
    for (int s = 0; s < kSubcells; ++s) {
      const double eps = -0.5 * omega + (static_cast<double>(b * kSubcells + s) + 0.5) * h;
      acc += f(eps) * h;
    }
    out[b] = acc;
  }
  return out;
}

std::string run_spectrum(const RunConfig& cfg) {
  const auto sys = SpinSystem::from_j(cfg.j);
  const auto ops = build_operators(sys);
  const FloquetBuilder builder(ops);
  const auto kappas = kappa_values(cfg);

  std::vector<std::string> chunks(kappas.size());
  parallel_for(kappas.size(), [&](std::size_t i) {
    const auto par = params_of(cfg, kappas[i]);
    const auto exact = diagonalize_floquet(builder(par), par.period);
    const auto eff = effective_spectrum(build_effective_hamiltonian(ops, par), par);
    csv::Writer w;
    for (int a = 0; a < exact.dim(); ++a) w.row(kappas[i], "exact", a, exact.quasienergies[a]);
    for (int a = 0; a < static_cast<int>(eff.folded.size()); ++a) {
      w.row(kappas[i], "effective", a, eff.folded[a]);
    }
    chunks[i] = w.str();
  });

  auto doc = start_document(cfg);
  doc.header({"kappa", "branch", "index", "quasienergy"});
  std::string text = doc.str();
  for (const auto& c : chunks) text += c;
  return text;
}

std::string run_sweep(const RunConfig& cfg) {
  const auto sys = SpinSystem::from_j(cfg.j);
  const auto ops = build_operators(sys);
  const FloquetBuilder builder(ops);
  const auto kappas = kappa_values(cfg);

  std::vector<MatchReport> reports(kappas.size());
  parallel_for(kappas.size(), [&](std::size_t i) {
    const auto par = params_of(cfg, kappas[i]);
    const auto exact = diagonalize_floquet(builder(par), par.period);
    const auto eff = effective_spectrum(build_effective_hamiltonian(ops, par), par);
    reports[i] = match_spectra(exact, eff);
  });

  auto doc = start_document(cfg);
  doc.header({"kappa", "max_circular_distance", "mean_circular_distance", "mean_spacing"});
  const double spacing = params_of(cfg, cfg.kappa).omega() / sys.dim();
  for (std::size_t i = 0; i < kappas.size(); ++i) {
    doc.row(kappas[i], reports[i].max_circular_distance, reports[i].mean_circular_distance,
            spacing);
  }
  return doc.str();
}

std::string run_doqs(const RunConfig& cfg) {
  const auto sys = SpinSystem::from_j(cfg.j);
  const auto ops = build_operators(sys);
  const auto par = params_of(cfg, cfg.kappa);
  const auto spectrum = diagonalize_floquet(build_floquet(ops, par), par.period);
  const int bins = cfg.bins > 0 ? cfg.bins : default_bins(sys.dim());
  const double omega = par.omega();

  const auto hist = doqs_histogram(spectrum, bins);
  const auto crit = find_critical_points(par, sys);
  const auto analytic = analytic_doqs(crit, par, hist.grid);
  const auto n_analytic = cumulative_at_edges(
      bins, omega, [&](double eps) { return analytic_doqs_value(eps, crit, par); });

  std::vector<double> rho_traces, n_traces;
  if (cfg.n_max > 0) {
    const auto traces = floquet_traces(spectrum, cfg.n_max);
    const std::span<const Complex> tspan(traces.data(), traces.size());
    rho_traces = doqs_from_traces(tspan, hist.grid, cfg.sigma, sys.dim(), par.period).rho;
    const auto fine = zone_grid(bins * kSubcells, omega);
    const auto fine_rho = doqs_from_traces(tspan, fine, cfg.sigma, sys.dim(), par.period).rho;
    std::size_t k = 0;
    n_traces = cumulative_at_edges(bins, omega, [&](double) { return fine_rho[k++]; });
  }

  auto doc = start_document(cfg);
  if (cfg.n_max > 0) {
    doc.header({"eps", "rho_hist", "rho_analytic", "N_hist", "N_analytic", "rho_traces",
                "N_traces"});
  } else {
    doc.header({"eps", "rho_hist", "rho_analytic", "N_hist", "N_analytic"});
  }
  for (int b = 0; b < bins; ++b) {
    if (cfg.n_max > 0) {
      doc.row(hist.grid[b], hist.rho[b], analytic.rho[b], hist.n_integrated[b], n_analytic[b],
              rho_traces[b], n_traces[b]);
    } else {
      doc.row(hist.grid[b], hist.rho[b], analytic.rho[b], hist.n_integrated[b], n_analytic[b]);
    }
  }
  return doc.str();
}

std::string run_critical(const RunConfig& cfg) {
  const auto sys = SpinSystem::from_j(cfg.j);
  const auto par = params_of(cfg, cfg.kappa);
  const auto crit = find_critical_points(par, sys);

  auto doc = start_document(cfg);
  doc.header({"kind", "X", "Y", "Z", "E_unfolded", "eps_folded", "beta", "A"});
  for (const auto& cp : crit.points) {
    doc.row(to_string(cp.kind), cp.location.x, cp.location.y, cp.location.z, cp.e_unfolded,
            cp.eps_folded, cp.beta, cp.amplitude);
  }
  return doc.str();
}

std::string run_protocol_command(const RunConfig& cfg, std::ostream& diagnostics) {
  const auto sys = SpinSystem::from_j(cfg.j);
  const auto par = params_of(cfg, cfg.kappa);
  if (cfg.steps < 10 * cfg.j) {
    diagnostics << "warning: K=" << cfg.steps << " is below 10 j; time averages may not "
                << "have converged\n";
  }
  std::vector<Branch> branches;
  if (cfg.branch != "S-M") branches.push_back(Branch::saddle_to_minimum);
  if (cfg.branch != "S-m") branches.push_back(Branch::saddle_to_maximum);

  auto doc = start_document(cfg);
  doc.header({"branch", "gamma_re", "gamma_im", "E_mean", "xbar_quantum", "xbar_classical",
              "P_r"});
  for (Branch b : branches) {
    for (const auto& r : run_protocol(par, sys, b, cfg.points, cfg.steps)) {
      const double inf = std::numeric_limits<double>::infinity();
      const double re = r.gamma0.is_infinite() ? inf : r.gamma0.value().real();
      const double im = r.gamma0.is_infinite() ? inf : r.gamma0.value().imag();
      doc.row(to_string(b), re, im, r.mean_quasienergy, r.xbar_quantum, r.xbar_classical,
              r.participation_ratio);
    }
  }
  return doc.str();
}

void add_common(CLI::App& sub, RunConfig& cfg) {
  sub.add_option("--j", cfg.j, "Spin quantum number (half-integer)")->capture_default_str();
  sub.add_option("--p", cfg.p, "Kick strength")->capture_default_str();
  sub.add_option("--kappa", cfg.kappa, "Twist strength")->capture_default_str();
  sub.add_option("--T", cfg.period, "Driving period")->capture_default_str();
  sub.add_option("--out", cfg.output_path, "Output CSV path, - for stdout")
      ->capture_default_str();
}

}  // namespace

std::string execute(const RunConfig& cfg, std::ostream& diagnostics) {
  cfg.validate();
  switch (cfg.command) {
    case Command::spectrum: return run_spectrum(cfg);
    case Command::doqs: return run_doqs(cfg);
    case Command::critical: return run_critical(cfg);
    case Command::protocol: return run_protocol_command(cfg, diagnostics);
    case Command::sweep: return run_sweep(cfg);
  }
  throw ConfigError("command: unhandled");
}

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  std::string sweep_text;

  CLI::App app{"Quantum kicked top: Floquet spectra, DOQS, critical points, protocol",
               "kicked_top"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  auto* spectrum = app.add_subcommand("spectrum", "Exact and effective quasienergies");
  add_common(*spectrum, cfg);
  spectrum->add_option("--kappa-sweep", sweep_text, "start:stop:step, endpoints inclusive");

  auto* doqs = app.add_subcommand("doqs", "Density of quasienergy states");
  add_common(*doqs, cfg);
  doqs->add_option("--bins", cfg.bins, "Histogram bins (default 2(2j+1)-1)");
  doqs->add_option("--n-max", cfg.n_max, "Trace-series cutoff; 0 disables")
      ->capture_default_str();
  doqs->add_option("--sigma", cfg.sigma, "Trace-series Gaussian width")->capture_default_str();

  auto* critical = app.add_subcommand("critical", "Critical points of the quasienergy landscape");
  add_common(*critical, cfg);

  auto* protocol = app.add_subcommand("protocol", "Time-averaged magnetization protocol");
  add_common(*protocol, cfg);
  protocol->add_option("--K", cfg.steps, "Number of kicks")->capture_default_str();
  protocol->add_option("--points", cfg.points, "Initial states per branch")
      ->capture_default_str();
  protocol->add_option("--branch", cfg.branch, "S-m, S-M or both")->capture_default_str();

  auto* sweep = app.add_subcommand("sweep", "Effective-model accuracy across kappa");
  add_common(*sweep, cfg);
  sweep->add_option("--kappa-sweep", sweep_text, "start:stop:step, endpoints inclusive")
      ->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    cfg.command = command_from_string(app.get_subcommands().front()->get_name());
    if (!sweep_text.empty()) cfg.kappa_sweep = SweepRange::parse(sweep_text);
    cfg.validate();
    const std::string text = execute(cfg, err);
    if (cfg.output_path == "-") {
      out << text;
      out.flush();
    } else {
      std::ofstream file(cfg.output_path, std::ios::binary);
      if (!file) throw ConfigError("out: cannot open '" + cfg.output_path + "' for writing");
      file << text;
      if (!file.flush()) throw ConfigError("out: write to '" + cfg.output_path + "' failed");
    }
    return 0;
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << '\n';
    return 2;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    err << "numerical error: " << e.what() << '\n';
    return 3;
  }
}

}  // namespace kt::cli
