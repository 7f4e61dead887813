#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "kicked_top/effective_model.hpp"
#include "kicked_top/errors.hpp"
#include "kicked_top/floquet.hpp"
#include "kicked_top/protocol.hpp"
#include "kicked_top/semiclassics.hpp"
#include "kicked_top/spectral_analysis.hpp"
#include "kicked_top/version.hpp"

namespace py = pybind11;
using namespace kt;

namespace {

KickedTopParams params(double p, double kappa, double period) {
  KickedTopParams par{p, kappa, period};
  par.validate();
  return par;
}

py::dict critical_point_dict(const CriticalPoint& cp) {
  py::dict d;
  d["kind"] = to_string(cp.kind);
  d["X"] = cp.location.x;
  d["Y"] = cp.location.y;
  d["Z"] = cp.location.z;
  d["E_unfolded"] = cp.e_unfolded;
  d["eps_folded"] = cp.eps_folded;
  d["beta"] = cp.beta;
  d["A"] = cp.amplitude;
  return d;
}

Branch branch_from(const std::string& name) {
  if (name == "S-m") return Branch::saddle_to_minimum;
  if (name == "S-M") return Branch::saddle_to_maximum;
  throw ConfigError("branch must be S-m or S-M");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Quantum kicked top: Floquet spectra, effective Hamiltonian, semiclassics";
  m.attr("__version__") = kVersion;

  static py::exception<ConfigError> config_error(m, "ConfigError", PyExc_ValueError);
  static py::exception<NumericalError> numerical_error(m, "NumericalError", PyExc_ArithmeticError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ConfigError& e) {
      PyErr_SetString(config_error.ptr(), e.what());
    } catch (const NumericalError& e) {
      PyErr_SetString(numerical_error.ptr(), e.what());
    }
  });

  m.def("floquet_operator",
        [](double j, double p, double kappa) {
          return build_floquet(build_operators(SpinSystem::from_j(j)), params(p, kappa, 1.0));
        },
        py::arg("j"), py::arg("p"), py::arg("kappa"));

  m.def("quasienergies",
        [](double j, double p, double kappa, double period) {
          const auto ops = build_operators(SpinSystem::from_j(j));
          const auto par = params(p, kappa, period);
          return Eigen::VectorXd(diagonalize_floquet(build_floquet(ops, par), period).quasienergies);
        },
        py::arg("j"), py::arg("p") = 0.1, py::arg("kappa") = 0.2, py::arg("T") = 1.0,
        "Exact quasienergies in [-omega/2, omega/2), ascending.");

  m.def("effective_quasienergies",
        [](double j, double p, double kappa, double period) {
          const auto ops = build_operators(SpinSystem::from_j(j));
          const auto par = params(p, kappa, period);
          const auto eff = effective_spectrum(build_effective_hamiltonian(ops, par), par);
          return py::make_tuple(Eigen::VectorXd(eff.unfolded), Eigen::VectorXd(eff.folded));
        },
        py::arg("j"), py::arg("p") = 0.1, py::arg("kappa") = 0.2, py::arg("T") = 1.0,
        "(unfolded, folded) eigenvalues of the effective Hamiltonian.");

  m.def("critical_points",
        [](double j, double p, double kappa, double period) {
          const auto crit = find_critical_points(params(p, kappa, period), SpinSystem::from_j(j));
          py::list out;
          for (const auto& cp : crit.points) out.append(critical_point_dict(cp));
          return out;
        },
        py::arg("j") = 40.0, py::arg("p") = 0.1, py::arg("kappa") = 0.2, py::arg("T") = 1.0);

  m.def("doqs_histogram",
        [](double j, double p, double kappa, double period, int bins) {
          const auto sys = SpinSystem::from_j(j);
          const auto par = params(p, kappa, period);
          const auto spec = diagonalize_floquet(build_floquet(build_operators(sys), par), period);
          const auto h = doqs_histogram(spec, bins > 0 ? bins : default_bins(sys.dim()));
          return py::make_tuple(h.grid, h.rho, h.n_integrated);
        },
        py::arg("j") = 40.0, py::arg("p") = 0.1, py::arg("kappa") = 0.2, py::arg("T") = 1.0,
        py::arg("bins") = 0, "(eps, rho, N) with N at bin right edges.");

  m.def("analytic_doqs",
        [](const std::vector<double>& eps, double j, double p, double kappa, double period) {
          return analytic_doqs(params(p, kappa, period), SpinSystem::from_j(j), eps).rho;
        },
        py::arg("eps"), py::arg("j") = 40.0, py::arg("p") = 0.1, py::arg("kappa") = 0.2,
        py::arg("T") = 1.0);

  m.def("protocol",
        [](const std::string& branch, double j, double p, double kappa, double period, int points,
           int steps) {
          const auto res = run_protocol(params(p, kappa, period), SpinSystem::from_j(j),
                                        branch_from(branch), points, steps);
          py::list out;
          for (const auto& r : res) {
            py::dict d;
            d["branch"] = to_string(r.branch);
            d["gamma"] = r.gamma0.is_infinite() ? py::object(py::float_(INFINITY))
                                                : py::object(py::cast(r.gamma0.value()));
            d["E_mean"] = r.mean_quasienergy;
            d["xbar_quantum"] = r.xbar_quantum;
            d["xbar_classical"] = r.xbar_classical;
            d["P_r"] = r.participation_ratio;
            out.append(d);
          }
          return out;
        },
        py::arg("branch"), py::arg("j") = 40.0, py::arg("p") = 0.1, py::arg("kappa") = 0.2,
        py::arg("T") = 1.0, py::arg("points") = 40, py::arg("K") = kDefaultProtocolSteps);
}
