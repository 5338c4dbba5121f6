// otto.cpp: Otto cycle quantities

#include "srotto/otto.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

#include "srotto/errors.hpp"
#include "srotto/format.hpp"

namespace srotto {

double bose_occupation(double temperature, double omega)
{
    require(temperature > 0.0, ErrorKind::InvalidArgument, "temperature must be > 0");
    return 1.0 / std::expm1(omega / temperature);
}

double effective_temperature(double mean_n, double omega)
{
    if (!(mean_n > 0.0)) {
        std::ostringstream os;
        os << "effective temperature undefined for mean photon number " << mean_n;
        fail(ErrorKind::UndefinedTemperature, os.str());
    }
    return omega / std::log1p(1.0 / mean_n);
}

RealVector thermal_distribution(double temperature, double omega, int n_levels)
{
    require(temperature > 0.0, ErrorKind::InvalidArgument, "temperature must be > 0");
    require(n_levels >= 1, ErrorKind::InvalidArgument, "n_levels must be >= 1");
    RealVector p(n_levels);
    for (int n = 0; n < n_levels; ++n) {
        p(n) = std::exp(-n * omega / temperature);
    }
    return p / p.sum();
}

OttoCycleSpec::OttoCycleSpec(double omega_l, double t_hot, double t_c, int levels, double omega_h)
    : omega_H(omega_h), omega_L(omega_l), T_H(t_hot), T_c(t_c), n_levels(levels)
{
    require(omega_L > 0.0 && omega_L < omega_H, ErrorKind::InvalidArgument,
            "Otto cycle needs 0 < omega_L < omega_H");
    require(T_H > 0.0 && T_c > 0.0, ErrorKind::InvalidArgument, "temperatures must be > 0");
    require(n_levels >= 2, ErrorKind::InvalidArgument, "n_levels must be >= 2");
}

namespace {

void check_distribution(std::span<const double> p, const char* name)
{
    double sum = 0.0;
    for (double v : p) {
        require(v >= -1e-12, ErrorKind::InvalidArgument,
                std::string(name) + " has a negative occupation probability");
        sum += v;
    }
    require(std::abs(sum - 1.0) <= 1e-6, ErrorKind::InvalidArgument,
            std::string(name) + " is not normalized");
}

OttoResult finish(double omega_l, double q_in, double q_out, double work)
{
    OttoResult r;
    r.omega_L = omega_l;
    r.q_in = q_in;
    r.q_out = q_out;
    r.work = work;
    if (q_in > 0.0) {
        r.efficiency = work / q_in;
    }
    r.positive_work = q_in > -q_out && -q_out > 0.0;
    return r;
}

} // namespace

OttoResult otto_quantities(const OttoCycleSpec& spec, std::span<const double> p_hot,
                           std::span<const double> p_cold)
{
    require(p_hot.size() == p_cold.size(), ErrorKind::InvalidArgument,
            "hot and cold distributions differ in length");
    require(p_hot.size() == static_cast<std::size_t>(spec.n_levels), ErrorKind::InvalidArgument,
            "distribution length does not match n_levels");
    check_distribution(p_hot, "hot distribution");
    check_distribution(p_cold, "cold distribution");

    double q_in = 0.0;
    double q_out = 0.0;
    for (std::size_t n = 0; n < p_hot.size(); ++n) {
        const double dp = p_hot[n] - p_cold[n];
        q_in += static_cast<double>(n) * spec.omega_H * dp;
        q_out -= static_cast<double>(n) * spec.omega_L * dp;
    }
    return finish(spec.omega_L, q_in, q_out, q_in + q_out);
}

OttoResult otto_quantities_thermal(const OttoCycleSpec& spec)
{
    const RealVector ph = thermal_distribution(spec.T_H, spec.omega_H, spec.n_levels);
    const RealVector pl = thermal_distribution(spec.T_L(), spec.omega_L, spec.n_levels);
    return otto_quantities(spec, {ph.data(), static_cast<std::size_t>(ph.size())},
                           {pl.data(), static_cast<std::size_t>(pl.size())});
}

PhotonWork work_from_photon_numbers(const OttoCycleSpec& spec, double mean_n_ss, double mean_n_L)
{
    require(mean_n_ss >= 0.0 && mean_n_L >= 0.0, ErrorKind::InvalidArgument,
            "mean photon numbers must be >= 0");
    const double eta = 1.0 - spec.omega_L / spec.omega_H;
    return {eta * (mean_n_ss - mean_n_L) * spec.omega_H, eta};
}

std::vector<OttoResult> work_curve(const WorkCurveTemplate& tmpl, double mean_n_ss,
                                   std::span<const double> omega_L_grid, WorkCurveMode mode)
{
    const double n_cold = bose_occupation(tmpl.T_c, tmpl.omega_H);
    const double t_hot = effective_temperature(mean_n_ss, tmpl.omega_H);
    std::vector<OttoResult> out;
    out.reserve(omega_L_grid.size());
    for (double wl : omega_L_grid) {
        const OttoCycleSpec spec(wl, t_hot, tmpl.T_c, tmpl.n_levels, tmpl.omega_H);
        if (mode == WorkCurveMode::ThermalDistributions) {
            out.push_back(otto_quantities_thermal(spec));
            continue;
        }
        const double dn = mean_n_ss - n_cold;
        const PhotonWork pw = work_from_photon_numbers(spec, mean_n_ss, n_cold);
        out.push_back(finish(wl, spec.omega_H * dn, -spec.omega_L * dn, pw.work));
    }
    return out;
}

OttoResult otto_from_field_state(const OttoCycleSpec& spec, const DensityMatrix& rho_field)
{
    require(rho_field.space().kind() == HilbertSpace::Kind::Fock,
            ErrorKind::RepresentationMismatch, "Otto sums need a field-only state");
    require(rho_field.dim() == spec.n_levels, ErrorKind::InvalidArgument,
            "field state dimension does not match n_levels");
    RealVector ph = rho_field.populations().cwiseMax(0.0);
    ph /= ph.sum();
    const RealVector pl = thermal_distribution(spec.T_L(), spec.omega_L, spec.n_levels);
    return otto_quantities(spec, {ph.data(), static_cast<std::size_t>(ph.size())},
                           {pl.data(), static_cast<std::size_t>(pl.size())});
}

void write_otto_csv(std::ostream& os, std::span<const OttoResult> rows)
{
    os << "omega_L,q_in,q_out,work,efficiency,positive_work\n";
    for (const auto& r : rows) {
        os << fmt_num(r.omega_L) << ',' << fmt_num(r.q_in) << ',' << fmt_num(r.q_out) << ','
           << fmt_num(r.work) << ',' << (r.efficiency ? fmt_num(*r.efficiency) : std::string("nan"))
           << ',' << (r.positive_work ? "true" : "false") << '\n';
    }
}

} // namespace srotto
