// otto.hpp: Effective temperature and four-stroke quantum Otto cycle bookkeeping

#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "srotto/hilbert.hpp"

namespace srotto {

// Bose–Einstein occupation 1/(exp(omega/T) - 1).
double bose_occupation(double temperature, double omega = 1.0);

// Inverse of bose_occupation: T = omega / ln(1 + 1/n). Throws UndefinedTemperature for n <= 0.
double effective_temperature(double mean_n, double omega = 1.0);

// P_n = exp(-n omega/T)/Z for n = 0..n_levels-1, normalized over the truncated ladder.
RealVector thermal_distribution(double temperature, double omega, int n_levels);

struct OttoCycleSpec {
    double omega_H = 1.0;
    double omega_L = 0.5;
    double T_H = 1.0;
    double T_c = 0.5;
    int n_levels = 41;

    // Enforces 0 < omega_L < omega_H and n_levels >= 2.
    OttoCycleSpec(double omega_l, double t_hot, double t_c, int levels, double omega_h = 1.0);

    double T_L() const noexcept { return omega_L * T_c; }
};

struct OttoResult {
    double omega_L = 0.0;
    double q_in = 0.0;
    double q_out = 0.0;
    double work = 0.0;
    std::optional<double> efficiency; // empty when q_in <= 0
    bool positive_work = false;
};

// Evaluates Q_in, Q_out and W from occupation distributions at the hot and cold isochores,
// with E_n^H = n omega_H and E_n^L = n omega_L.
OttoResult otto_quantities(const OttoCycleSpec& spec, std::span<const double> p_hot,
                           std::span<const double> p_cold);
// Same with the thermal distributions at T_H and T_L implied by `spec`.
OttoResult otto_quantities_thermal(const OttoCycleSpec& spec);

struct PhotonWork {
    double work = 0.0;
    double efficiency = 0.0;
};

// W = eta (n_ss - n_L) omega_H with eta = 1 - omega_L/omega_H.
PhotonWork work_from_photon_numbers(const OttoCycleSpec& spec, double mean_n_ss, double mean_n_L);

struct WorkCurveTemplate {
    double omega_H = 1.0;
    double T_c = 0.5;
    int n_levels = 41;
};

enum class WorkCurveMode {
    PhotonNumber,         // W = eta (n_ss - n_c)
    ThermalDistributions, // level sums with thermal P at T_H = T_eff(n_ss) and T_L
};

// Per-omega_L results with T_L = omega_L T_c. The cold occupation <n>_L is n(T_L, omega_L),
// which equals <n>_c for every omega_L.
std::vector<OttoResult> work_curve(const WorkCurveTemplate& tmpl, double mean_n_ss,
                                   std::span<const double> omega_L_grid,
                                   WorkCurveMode mode = WorkCurveMode::PhotonNumber);

// Level sums with the raw diagonal of a steady field state as the hot distribution.
OttoResult otto_from_field_state(const OttoCycleSpec& spec, const DensityMatrix& rho_field);

void write_otto_csv(std::ostream& os, std::span<const OttoResult> rows);

} // namespace srotto
