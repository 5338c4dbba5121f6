// bindings.cpp: Python module _srotto

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "srotto/cost.hpp"
#include "srotto/errors.hpp"
#include "srotto/fitting.hpp"
#include "srotto/injection.hpp"
#include "srotto/otto.hpp"

namespace py = pybind11;
using namespace srotto;

namespace {

DensityMatrix field_state(const Matrix& m)
{
    return DensityMatrix(HilbertSpace::fock(static_cast<int>(m.rows()) - 1), m);
}

py::dict stats_dict(const SteadyStateStats& s)
{
    py::dict d;
    d["mean_n"] = s.mean_n_ss;
    d["T_eff"] = s.T_eff_ss;
    d["std_mean_n"] = s.std_n;
    d["std_T_eff"] = s.std_T;
    d["cycles_used"] = s.cycles_used;
    return d;
}

py::dict scaling_dict(const ScalingFit& f)
{
    py::dict d;
    d["offset"] = f.offset;
    d["xi"] = f.coefficient;
    d["residual"] = f.residual;
    d["exponent"] = f.exponent;
    d["exponent_amplitude"] = f.exponent_amplitude;
    d["exponent_offset"] = f.exponent_offset;
    d["exponent_residual"] = f.exponent_residual;
    return d;
}

py::dict tcs_dict(const TCSFit& f)
{
    py::dict d;
    d["alpha"] = f.alpha;
    d["temperature"] = f.temperature;
    d["fidelity"] = f.fidelity_value;
    d["moment_fidelity"] = f.moment_fidelity;
    d["mean_n"] = f.mean_n;
    return d;
}

} // namespace

PYBIND11_MODULE(_srotto, m)
{
    m.doc() = "Superradiant photonic quantum Otto engine simulator";
    m.attr("__version__") = SROTTO_VERSION;

    py::register_exception<Error>(m, "SrottoError", PyExc_RuntimeError);

    m.def("bose_occupation", &bose_occupation, py::arg("temperature"), py::arg("omega") = 1.0);
    m.def("effective_temperature", &effective_temperature, py::arg("mean_n"), py::arg("omega") = 1.0);

    m.def(
        "thermal_field",
        [](double t, double omega, int n_max) {
            return thermal_field(HilbertSpace::fock(n_max), {t, omega}).entries();
        },
        py::arg("temperature"), py::arg("omega") = 1.0, py::arg("n_max") = 40);
    m.def(
        "displaced_thermal_state",
        [](double t, cplx alpha, int n_max) {
            return displaced_thermal_state(HilbertSpace::fock(n_max), {t, 1.0}, alpha).entries();
        },
        py::arg("temperature"), py::arg("alpha"), py::arg("n_max") = 40);
    m.def(
        "fidelity", [](const Matrix& a, const Matrix& b) { return fidelity(field_state(a), field_state(b)); },
        py::arg("rho"), py::arg("sigma"));

    py::class_<ProtocolConfig>(m, "ProtocolConfig")
        .def(py::init<>())
        .def_readwrite("atoms", &ProtocolConfig::atoms)
        .def_readwrite("num_injections", &ProtocolConfig::num_injections)
        .def_readwrite("t_int", &ProtocolConfig::t_int)
        .def_readwrite("period", &ProtocolConfig::period)
        .def_readwrite("T_h", &ProtocolConfig::T_h)
        .def_readwrite("T_c", &ProtocolConfig::T_c)
        .def_readwrite("n_max", &ProtocolConfig::n_max)
        .def_readwrite("samples_per_cycle", &ProtocolConfig::samples_per_cycle)
        .def_readwrite("burn_in_fraction", &ProtocolConfig::burn_in_fraction)
        .def_property(
            "g", [](const ProtocolConfig& c) { return c.model.g; },
            [](ProtocolConfig& c, double v) { c.model.g = v; })
        .def_property(
            "kappa", [](const ProtocolConfig& c) { return c.model.kappa; },
            [](ProtocolConfig& c, double v) { c.model.kappa = v; })
        .def_property(
            "hamiltonian",
            [](const ProtocolConfig& c) { return std::string(to_string(c.model.hamiltonian_kind)); },
            [](ProtocolConfig& c, const std::string& v) {
                c.model.hamiltonian_kind = parse_hamiltonian_kind(v);
            })
        .def_property(
            "representation",
            [](const ProtocolConfig& c) { return std::string(to_string(c.model.representation)); },
            [](ProtocolConfig& c, const std::string& v) {
                c.model.representation = parse_representation(v);
            })
        .def_property(
            "dissipators",
            [](const ProtocolConfig& c) {
                std::vector<std::pair<std::string, double>> out;
                for (const auto& d : c.model.atomic_dissipators) {
                    out.emplace_back(to_string(d.channel), d.gamma);
                }
                return out;
            },
            [](ProtocolConfig& c, const std::vector<std::pair<std::string, double>>& v) {
                c.model.atomic_dissipators.clear();
                for (const auto& [name, gamma] : v) {
                    c.model.atomic_dissipators.push_back({parse_channel(name), gamma});
                }
            })
        .def("validate", &ProtocolConfig::validate);

    m.def(
        "run_ignition",
        [](const ProtocolConfig& c) {
            std::optional<TimeSeries> run;
            {
                py::gil_scoped_release release;
                run = run_ignition(c);
            }
            const TimeSeries& ts = *run;
            std::vector<double> t, n, temp;
            for (const auto& s : ts.samples) {
                t.push_back(s.t);
                n.push_back(s.mean_n);
                temp.push_back(s.T_eff);
            }
            py::dict d;
            d["t"] = t;
            d["mean_n"] = n;
            d["T_eff"] = temp;
            d["final_field_state"] = ts.final_field_state.entries();
            d["truncation_warning"] = ts.truncation_warning;
            d["steady_state"] = c.num_injections >= 50 ? py::object(stats_dict(steady_state_stats(ts, c)))
                                                       : py::object(py::none());
            return d;
        },
        py::arg("config"));

    m.def(
        "fit_quadratic_scaling",
        [](const std::vector<double>& n, const std::vector<double>& v, std::optional<double> pin) {
            if (n.size() != v.size()) {
                fail(ErrorKind::InvalidArgument, "N and values must have equal length");
            }
            std::vector<ScalingPoint> pts;
            for (std::size_t i = 0; i < n.size(); ++i) {
                pts.push_back({n[i], v[i]});
            }
            return scaling_dict(fit_quadratic_scaling(pts, pin));
        },
        py::arg("N"), py::arg("values"), py::arg("pin_offset") = py::none());
    m.def(
        "fit_thermal_coherent_state",
        [](const Matrix& rho, bool refine) { return tcs_dict(fit_thermal_coherent_state(field_state(rho), refine)); },
        py::arg("rho"), py::arg("refine") = true);
    m.def("micromaser_intensity", &micromaser_intensity, py::arg("rate"), py::arg("g"), py::arg("t_int"),
          py::arg("p_excited"), py::arg("kappa"));

    m.def(
        "otto_quantities",
        [](double omega_l, const std::vector<double>& p_hot, const std::vector<double>& p_cold, double omega_h) {
            const OttoCycleSpec spec(omega_l, 1.0, 0.5, static_cast<int>(p_hot.size()), omega_h);
            const OttoResult r = otto_quantities(spec, p_hot, p_cold);
            py::dict d;
            d["q_in"] = r.q_in;
            d["q_out"] = r.q_out;
            d["work"] = r.work;
            d["efficiency"] = r.efficiency ? py::object(py::float_(*r.efficiency)) : py::object(py::none());
            d["positive_work"] = r.positive_work;
            return d;
        },
        py::arg("omega_L"), py::arg("p_hot"), py::arg("p_cold"), py::arg("omega_H") = 1.0);
    m.def(
        "work_from_photon_numbers",
        [](double omega_l, double n_ss, double n_l, double omega_h) {
            const OttoCycleSpec spec(omega_l, 1.0, 0.5, 2, omega_h);
            const PhotonWork w = work_from_photon_numbers(spec, n_ss, n_l);
            return std::make_pair(w.work, w.efficiency);
        },
        py::arg("omega_L"), py::arg("mean_n_ss"), py::arg("mean_n_L"), py::arg("omega_H") = 1.0);

    m.def(
        "pulse_energy",
        [](double inv_tau_gamma, double divergence) {
            CostParams p;
            p.inv_tau_gamma = inv_tau_gamma;
            p.divergence = divergence;
            return pulse_energy(p);
        },
        py::arg("inv_tau_gamma") = 2.0, py::arg("divergence") = 0.5);
    m.def(
        "total_cost",
        [](double pulse_energy_hbar_omega, int atoms, int clusters, double work_output) {
            return to_json(total_cost_report_from_energy(pulse_energy_hbar_omega, atoms, clusters, work_output))
                .dump();
        },
        py::arg("pulse_energy"), py::arg("atoms"), py::arg("clusters"), py::arg("work_output") = 0.0);
}
