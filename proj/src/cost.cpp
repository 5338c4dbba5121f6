// cost.cpp: Energy cost of re-preparing cluster coherence with pi/2 pulses

#include "srotto/cost.hpp"

#include <cmath>
#include <numbers>

#include "srotto/errors.hpp"
#include "srotto/format.hpp"

namespace srotto {

namespace {

void require_positive(double v, const char* what)
{
    require(std::isfinite(v) && v > 0.0, ErrorKind::InvalidArgument,
            std::string(what) + " must be positive");
}

} // namespace

CostParams CostParams::from_physical(double omega, double gamma_sp, double tau_p, double delta)
{
    require_positive(omega, "omega");
    require_positive(gamma_sp, "gamma_sp");
    require_positive(tau_p, "tau_p");
    require_positive(delta, "delta");
    CostParams p;
    p.omega = omega;
    p.gamma_sp = gamma_sp;
    p.tau_p = tau_p;
    p.delta = delta;
    p.inv_tau_gamma = 1.0 / (tau_p * gamma_sp);
    const double lambda = 2.0 * std::numbers::pi * si::c / omega;
    p.divergence = lambda / (std::numbers::pi * delta);
    return p;
}

void CostParams::validate() const
{
    require(std::isfinite(inv_tau_gamma) && inv_tau_gamma >= 0.0, ErrorKind::InvalidArgument,
            "1/(tau_p gamma) must be nonnegative");
    require(divergence > 0.0 && divergence <= 1.0, ErrorKind::InvalidArgument,
            "beam divergence must lie in (0, 1]");
    if (has_physical()) {
        require_positive(gamma_sp, "gamma_sp");
        require_positive(tau_p, "tau_p");
        require_positive(delta, "delta");
    }
}

double dipole_moment_sq(double omega, double gamma_sp)
{
    require_positive(omega, "omega");
    require_positive(gamma_sp, "gamma_sp");
    return 3.0 * std::numbers::pi * si::epsilon0 * si::hbar * si::c * si::c * si::c * gamma_sp /
           (omega * omega * omega);
}

double pulse_field_amplitude(double omega, double gamma_sp, double tau_p)
{
    require_positive(tau_p, "tau_p");
    const double d = std::sqrt(dipole_moment_sq(omega, gamma_sp));
    return std::numbers::pi * si::hbar / (2.0 * d * tau_p);
}

double pulse_intensity(double omega, double gamma_sp, double tau_p)
{
    const double e = pulse_field_amplitude(omega, gamma_sp, tau_p);
    return 0.5 * si::c * si::epsilon0 * e * e;
}

double pulse_intensity_closed_form(double omega, double gamma_sp, double tau_p)
{
    require_positive(omega, "omega");
    require_positive(gamma_sp, "gamma_sp");
    require_positive(tau_p, "tau_p");
    return std::numbers::pi * si::hbar * omega * omega * omega /
           (24.0 * si::c * si::c * tau_p * tau_p * gamma_sp);
}

double pulse_energy(const CostParams& params)
{
    params.validate();
    const double z = params.divergence;
    return std::numbers::pi * std::numbers::pi / 24.0 * params.inv_tau_gamma / (z * z);
}

double pulse_energy_joules(const CostParams& params)
{
    params.validate();
    require(params.has_physical(), ErrorKind::InvalidArgument,
            "joule figures need omega, gamma_sp, tau_p and delta");
    const double area = std::numbers::pi * params.delta * params.delta / 4.0;
    return pulse_intensity(params.omega, params.gamma_sp, params.tau_p) * area * params.tau_p;
}

CostReport total_cost_report_from_energy(double pulse_energy_hbar_omega, int atoms, int clusters,
                                         double work_output)
{
    require(atoms >= 1, ErrorKind::InvalidArgument, "cost report needs N >= 1");
    require(clusters >= 0, ErrorKind::InvalidArgument, "cluster count must be >= 0");
    require(std::isfinite(pulse_energy_hbar_omega) && pulse_energy_hbar_omega >= 0.0,
            ErrorKind::InvalidArgument, "pulse energy must be nonnegative");
    CostReport r;
    r.atoms = atoms;
    r.clusters = clusters;
    r.pulse_energy_hbar_omega = pulse_energy_hbar_omega;
    r.per_cluster_hbar_omega = atoms * pulse_energy_hbar_omega;
    r.total_hbar_omega = static_cast<double>(clusters) * atoms * pulse_energy_hbar_omega;
    r.work_output_omega = work_output;
    if (work_output > 0.0) {
        r.ratio = r.total_hbar_omega / work_output;
    }
    return r;
}

CostReport total_cost_report(const CostParams& params, int atoms, int clusters, double work_output)
{
    CostReport r = total_cost_report_from_energy(pulse_energy(params), atoms, clusters, work_output);
    if (params.has_physical()) {
        r.pulse_energy_joules = pulse_energy_joules(params);
    }
    return r;
}

nlohmann::json to_json(const CostReport& r)
{
    nlohmann::json j = {
        {"atoms", r.atoms},
        {"clusters", r.clusters},
        {"pulse_energy_in_hbar_omega", r.pulse_energy_hbar_omega},
        {"pulse_energy_in_joules", nullptr},
        {"per_cluster_in_hbar_omega", r.per_cluster_hbar_omega},
        {"total_in_hbar_omega", r.total_hbar_omega},
        {"work_output_in_omega", r.work_output_omega},
        {"cost_to_work_ratio", nullptr},
        {"ratio_defined", r.ratio.has_value()},
    };
    if (r.pulse_energy_joules) {
        j["pulse_energy_in_joules"] = *r.pulse_energy_joules;
    }
    if (r.ratio) {
        j["cost_to_work_ratio"] = *r.ratio;
    }
    return j;
}

void write_cost_table(std::ostream& os, const CostReport& r)
{
    auto row = [&](const char* name, const std::string& value) {
        os << "  " << name;
        for (std::size_t k = std::char_traits<char>::length(name); k < 28; ++k) {
            os << ' ';
        }
        os << value << '\n';
    };
    os << "coherence cost\n";
    row("atoms per cluster", std::to_string(r.atoms));
    row("clusters", std::to_string(r.clusters));
    row("pulse energy [hbar w]", fmt_num(r.pulse_energy_hbar_omega));
    row("pulse energy [J]", r.pulse_energy_joules ? fmt_num(*r.pulse_energy_joules) : "n/a");
    row("per cluster [hbar w]", fmt_num(r.per_cluster_hbar_omega));
    row("total [hbar w]", fmt_num(r.total_hbar_omega));
    row("work output [w]", fmt_num(r.work_output_omega));
    row("cost / work", r.ratio ? fmt_num(*r.ratio) : "undefined (W <= 0)");
}

} // namespace srotto
