// cost.hpp: Energy cost of re-preparing cluster coherence with pi/2 pulses

#pragma once

#include <optional>
#include <ostream>

#include "json.hpp"

namespace srotto {

namespace si {
inline constexpr double hbar = 1.054571817e-34;     // J s
inline constexpr double c = 299792458.0;            // m / s
inline constexpr double epsilon0 = 8.8541878128e-12; // F / m
} // namespace si

struct CostParams {
    // Dimensionless inputs of the reduced pulse-energy formula.
    double inv_tau_gamma = 2.0; // 1 / (tau_p gamma_sp)
    double divergence = 0.5;    // lambda / (pi delta)
    // Optional SI description; omega = 0 means "not given" and disables the joule figures.
    double omega = 0.0;    // rad / s
    double gamma_sp = 0.0; // 1 / s
    double tau_p = 0.0;    // s
    double delta = 0.0;    // beam width, m

    // Derives inv_tau_gamma and divergence from the SI fields.
    static CostParams from_physical(double omega, double gamma_sp, double tau_p, double delta);

    bool has_physical() const noexcept { return omega > 0.0; }
    void validate() const;
};

// d^2 = 3 pi eps0 hbar c^3 gamma / omega^3
double dipole_moment_sq(double omega, double gamma_sp);
// pi/2 pulse: Omega_R tau_p = pi/2 with Omega_R = d E_p / hbar
double pulse_field_amplitude(double omega, double gamma_sp, double tau_p);
// I_p = c eps0 E_p^2 / 2 through the dipole chain
double pulse_intensity(double omega, double gamma_sp, double tau_p);
// pi hbar omega^3 / (24 c^2 tau_p^2 gamma)
double pulse_intensity_closed_form(double omega, double gamma_sp, double tau_p);

// U_p / (hbar omega) = (pi^2/24) (1/(tau_p gamma)) (1/zeta^2)
double pulse_energy(const CostParams& params);
// I_p * (pi delta^2 / 4) * tau_p in joules; needs the SI fields.
double pulse_energy_joules(const CostParams& params);

struct CostReport {
    int atoms = 0;
    int clusters = 0;
    double pulse_energy_hbar_omega = 0.0;
    std::optional<double> pulse_energy_joules;
    double per_cluster_hbar_omega = 0.0;
    double total_hbar_omega = 0.0;
    double work_output_omega = 0.0;
    std::optional<double> ratio; // empty when work_output <= 0
};

CostReport total_cost_report(const CostParams& params, int atoms, int clusters, double work_output);
// Same chain with U_p supplied directly in units of hbar omega.
CostReport total_cost_report_from_energy(double pulse_energy_hbar_omega, int atoms, int clusters,
                                         double work_output);

nlohmann::json to_json(const CostReport& report);
void write_cost_table(std::ostream& os, const CostReport& report);

} // namespace srotto
