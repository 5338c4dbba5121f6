// fitting.hpp: Scaling-law fits, thermal-coherent-state fits, and the micromaser estimate

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "srotto/hilbert.hpp"
#include "srotto/injection.hpp"

namespace srotto {

struct ScalingPoint {
    double n;
    double value;
};

struct ScalingFit {
    // value = offset + coefficient * N^2
    double offset = 0.0;
    bool offset_pinned = false;
    double coefficient = 0.0;
    double residual = 0.0; // RMS
    // value = exponent_offset + exponent_amplitude * N^exponent
    double exponent = 0.0;
    double exponent_amplitude = 0.0;
    double exponent_offset = 0.0;
    double exponent_residual = 0.0;
    std::vector<ScalingPoint> points;
};

// Least squares of value = offset + xi N^2 (offset pinned when given) plus the free-exponent
// model. With a pinned offset the exponent model shares it; otherwise all three of
// (offset, amplitude, exponent) are fitted by variable projection over the exponent.
ScalingFit fit_quadratic_scaling(const std::vector<ScalingPoint>& points,
                                 std::optional<double> pin_offset = std::nullopt);

// xi of value = offset + xi N^2 with the offset fixed; one point suffices.
double pinned_quadratic_coefficient(const std::vector<ScalingPoint>& points, double offset);

struct PowerLawFit {
    double amplitude = 0.0; // y = amplitude * x^exponent
    double exponent = 0.0;
    double residual = 0.0; // RMS in log space
    std::vector<std::pair<double, double>> points;
};

// Unweighted log-log regression; requires >= 2 distinct positive x and positive y.
PowerLawFit fit_power_law(const std::vector<std::pair<double, double>>& points);

struct TCSFit {
    cplx alpha;
    double temperature = 0.0;
    double fidelity_value = 0.0;
    double moment_fidelity = 0.0; // before local refinement
    double mean_n = 0.0;
};

// Moment matching (alpha = Tr(rho a), <n>_th = <n> - |alpha|^2, T from Bose–Einstein
// inversion) followed by a local pattern search on (T, |alpha|) that maximizes fidelity.
TCSFit fit_thermal_coherent_state(const DensityMatrix& rho_field, bool refine = true);

// I1 = r g^2 t_int^2 P_e / kappa
double micromaser_intensity(double rate, double g, double t_int, double p_excited, double kappa);

struct XiStudy {
    std::vector<std::pair<double, ScalingFit>> g_points;
    std::vector<std::pair<double, ScalingFit>> kappa_points;
    PowerLawFit g_law;
    PowerLawFit kappa_law;
};

// For each grid value, runs ignition at every N in `atoms`, fits xi on <n>_ss with the
// offset pinned to the initial occupation, and regresses xi on g (resp. kappa) in log-log.
XiStudy xi_parameter_study(const ProtocolConfig& base, const std::vector<double>& g_grid,
                           const std::vector<double>& kappa_grid,
                           const std::vector<int>& atoms = {2, 3, 4}, int jobs = 1);

nlohmann::json to_json(const ScalingFit& fit, const std::string& model);
nlohmann::json to_json(const PowerLawFit& fit, const std::string& model);
nlohmann::json to_json(const TCSFit& fit);

} // namespace srotto
