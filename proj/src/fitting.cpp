// fitting.cpp: Scaling-law fits, thermal-coherent-state fits, and the micromaser estimate

#include "srotto/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "srotto/errors.hpp"
#include "srotto/otto.hpp"
#include "srotto/parallel.hpp"

namespace srotto {

namespace {

struct LinearFit {
    double offset;
    double amplitude;
    double rss;
};

// value = offset + amplitude * basis, offset optionally fixed.
LinearFit fit_linear(const std::vector<ScalingPoint>& pts, const std::vector<double>& basis,
                     std::optional<double> pin)
{
    const double m = static_cast<double>(pts.size());
    LinearFit f{0.0, 0.0, 0.0};
    if (pin) {
        double num = 0.0;
        double den = 0.0;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            num += (pts[i].value - *pin) * basis[i];
            den += basis[i] * basis[i];
        }
        require(den > 0.0, ErrorKind::InvalidArgument, "degenerate design matrix");
        f.offset = *pin;
        f.amplitude = num / den;
    } else {
        double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            sx += basis[i];
            sy += pts[i].value;
            sxx += basis[i] * basis[i];
            sxy += basis[i] * pts[i].value;
        }
        const double det = m * sxx - sx * sx;
        require(std::abs(det) > 1e-14 * std::max(1.0, m * sxx), ErrorKind::InvalidArgument,
                "degenerate design matrix");
        f.amplitude = (m * sxy - sx * sy) / det;
        f.offset = (sy - f.amplitude * sx) / m;
    }
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const double r = pts[i].value - f.offset - f.amplitude * basis[i];
        f.rss += r * r;
    }
    return f;
}

LinearFit fit_at_exponent(const std::vector<ScalingPoint>& pts, double p, std::optional<double> pin)
{
    std::vector<double> basis(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        basis[i] = std::pow(pts[i].n, p);
    }
    return fit_linear(pts, basis, pin);
}

// Variable projection: the linear parameters are eliminated for each trial exponent,
// then the exponent is found by a coarse scan followed by golden-section refinement.
double best_exponent(const std::vector<ScalingPoint>& pts, std::optional<double> pin)
{
    constexpr double lo = 0.05;
    constexpr double hi = 6.0;
    constexpr int scan = 240;
    auto cost = [&](double p) { return fit_at_exponent(pts, p, pin).rss; };

    int best = 0;
    double best_cost = cost(lo);
    for (int k = 1; k <= scan; ++k) {
        const double c = cost(lo + (hi - lo) * k / scan);
        if (c < best_cost) {
            best_cost = c;
            best = k;
        }
    }
    const double h = (hi - lo) / scan;
    double a = std::max(lo, lo + (best - 1) * h);
    double b = std::min(hi, lo + (best + 1) * h);
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - phi * (b - a);
    double x2 = a + phi * (b - a);
    double f1 = cost(x1);
    double f2 = cost(x2);
    for (int it = 0; it < 200 && (b - a) > 1e-12; ++it) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = cost(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = cost(x2);
        }
    }
    return 0.5 * (a + b);
}

} // namespace

ScalingFit fit_quadratic_scaling(const std::vector<ScalingPoint>& points, std::optional<double> pin_offset)
{
    std::set<double> distinct;
    for (const auto& p : points) {
        require(std::isfinite(p.n) && std::isfinite(p.value), ErrorKind::InvalidArgument,
                "scaling points must be finite");
        require(p.n > 0.0, ErrorKind::InvalidArgument, "scaling points need N > 0");
        distinct.insert(p.n);
    }
    require(distinct.size() >= 3, ErrorKind::InvalidArgument,
            "degenerate design matrix: need >= 3 distinct N");

    ScalingFit out;
    out.points = points;
    out.offset_pinned = pin_offset.has_value();
    const double m = static_cast<double>(points.size());

    const LinearFit quad = fit_at_exponent(points, 2.0, pin_offset);
    out.offset = quad.offset;
    out.coefficient = quad.amplitude;
    out.residual = std::sqrt(quad.rss / m);

    const double p = best_exponent(points, pin_offset);
    const LinearFit free = fit_at_exponent(points, p, pin_offset);
    out.exponent = p;
    out.exponent_amplitude = free.amplitude;
    out.exponent_offset = free.offset;
    out.exponent_residual = std::sqrt(free.rss / m);
    return out;
}

double pinned_quadratic_coefficient(const std::vector<ScalingPoint>& points, double offset)
{
    require(!points.empty(), ErrorKind::InvalidArgument, "need at least one scaling point");
    for (const auto& p : points) {
        require(std::isfinite(p.value) && p.n > 0.0, ErrorKind::InvalidArgument,
                "scaling points need finite values and N > 0");
    }
    return fit_at_exponent(points, 2.0, offset).amplitude;
}

PowerLawFit fit_power_law(const std::vector<std::pair<double, double>>& points)
{
    std::set<double> distinct;
    for (const auto& [x, y] : points) {
        require(x > 0.0 && y > 0.0, ErrorKind::InvalidArgument,
                "power-law fit needs positive x and y");
        distinct.insert(x);
    }
    require(distinct.size() >= 2, ErrorKind::InvalidArgument,
            "degenerate design matrix: need >= 2 distinct x");
    std::vector<ScalingPoint> logs;
    std::vector<double> basis;
    for (const auto& [x, y] : points) {
        logs.push_back({x, std::log(y)});
        basis.push_back(std::log(x));
    }
    const LinearFit f = fit_linear(logs, basis, std::nullopt);
    PowerLawFit out;
    out.amplitude = std::exp(f.offset);
    out.exponent = f.amplitude;
    out.residual = std::sqrt(f.rss / static_cast<double>(points.size()));
    out.points = points;
    return out;
}

TCSFit fit_thermal_coherent_state(const DensityMatrix& rho_field, bool refine)
{
    const HilbertSpace& space = rho_field.space();
    require(space.kind() == HilbertSpace::Kind::Fock, ErrorKind::RepresentationMismatch,
            "thermal-coherent-state fit needs a field-only state");
    const Matrix& rho = rho_field.entries();

    cplx alpha{0.0, 0.0};
    double mean_n = 0.0;
    for (Index n = 0; n < rho.rows(); ++n) {
        mean_n += static_cast<double>(n) * rho(n, n).real();
        if (n > 0) {
            alpha += std::sqrt(static_cast<double>(n)) * rho(n, n - 1);
        }
    }
    const double n_th = mean_n - std::norm(alpha);
    if (n_th < -1e-9) {
        std::ostringstream os;
        os << "thermal occupation <n> - |alpha|^2 = " << n_th << " is negative";
        fail(ErrorKind::FitInfeasible, os.str());
    }
    // A pure coherent state has T = 0; clamp to a temperature whose occupation is negligible.
    static constexpr double kMinOccupation = 1e-12;
    auto temperature_of = [](double n) { return effective_temperature(std::max(n, kMinOccupation)); };
    auto fid = [&](double t, double r, double phase) {
        const DensityMatrix model =
            displaced_thermal_state(space, {t, 1.0}, std::polar(r, phase));
        return fidelity(rho_field, model);
    };

    TCSFit out;
    out.alpha = alpha;
    out.mean_n = mean_n;
    out.temperature = temperature_of(n_th);
    const double phase = std::arg(alpha);
    out.moment_fidelity = fid(out.temperature, std::abs(alpha), phase);
    out.fidelity_value = out.moment_fidelity;

    // Fidelity evaluation carries round-off near 1; smaller gains are not moves.
    static constexpr double kMinGain = 1e-10;
    if (refine && out.fidelity_value < 1.0 - kMinGain) {
        double t = out.temperature;
        double r = std::abs(alpha);
        double best = out.fidelity_value;
        double dt = 0.05 * t;
        double dr = 0.05 * std::max(r, 0.05);
        for (int it = 0; it < 120 && (dt > 1e-7 * t || dr > 1e-7); ++it) {
            bool moved = false;
            const double cand[4][2] = {{t + dt, r}, {t - dt, r}, {t, r + dr}, {t, r - dr}};
            for (const auto& c : cand) {
                if (c[0] <= 0.0 || c[1] < 0.0) {
                    continue;
                }
                const double f = fid(c[0], c[1], phase);
                if (f > best + kMinGain) {
                    best = f;
                    t = c[0];
                    r = c[1];
                    moved = true;
                    break;
                }
            }
            if (!moved) {
                dt *= 0.5;
                dr *= 0.5;
            }
        }
        out.temperature = t;
        out.alpha = std::polar(r, phase);
        out.fidelity_value = best;
    }
    out.fidelity_value = std::clamp(out.fidelity_value, 0.0, 1.0);
    out.moment_fidelity = std::clamp(out.moment_fidelity, 0.0, 1.0);
    return out;
}

double micromaser_intensity(double rate, double g, double t_int, double p_excited, double kappa)
{
    require(rate >= 0.0 && g >= 0.0 && t_int >= 0.0 && p_excited >= 0.0 && kappa >= 0.0,
            ErrorKind::InvalidArgument, "micromaser intensity needs nonnegative inputs");
    require(kappa > 0.0, ErrorKind::InvalidArgument, "micromaser intensity is undefined for kappa = 0");
    return rate * g * g * t_int * t_int * p_excited / kappa;
}

XiStudy xi_parameter_study(const ProtocolConfig& base, const std::vector<double>& g_grid,
                           const std::vector<double>& kappa_grid, const std::vector<int>& atoms,
                           int jobs)
{
    struct Job {
        bool is_g;
        std::size_t grid_index;
        int n;
        ProtocolConfig config;
        double mean_n = 0.0;
    };
    std::vector<Job> runs;
    for (std::size_t i = 0; i < g_grid.size(); ++i) {
        for (int n : atoms) {
            ProtocolConfig c = base;
            c.model.g = g_grid[i];
            c.atoms = n;
            runs.push_back({true, i, n, c});
        }
    }
    for (std::size_t i = 0; i < kappa_grid.size(); ++i) {
        for (int n : atoms) {
            ProtocolConfig c = base;
            c.model.kappa = kappa_grid[i];
            c.atoms = n;
            runs.push_back({false, i, n, c});
        }
    }
    parallel_for(runs.size(), jobs, [&](std::size_t k) {
        Job& j = runs[k];
        try {
            const TimeSeries ts = run_ignition(j.config);
            j.mean_n = steady_state_stats(ts, j.config).mean_n_ss;
        } catch (const Error& e) {
            std::ostringstream os;
            os << "xi study at g=" << j.config.model.g << " kappa=" << j.config.model.kappa
               << " N=" << j.n << ": " << e.what();
            throw Error(e.kind(), os.str());
        }
    });

    const double n_c = bose_occupation(base.T_c, base.model.omega_f);
    auto collect = [&](bool is_g, const std::vector<double>& grid,
                       std::vector<std::pair<double, ScalingFit>>& dest) {
        std::vector<std::pair<double, double>> law;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            std::vector<ScalingPoint> pts;
            for (const auto& j : runs) {
                if (j.is_g == is_g && j.grid_index == i) {
                    pts.push_back({static_cast<double>(j.n), j.mean_n});
                }
            }
            ScalingFit fit = fit_quadratic_scaling(pts, n_c);
            law.emplace_back(grid[i], fit.coefficient);
            dest.emplace_back(grid[i], std::move(fit));
        }
        return law;
    };

    XiStudy out;
    const auto g_law = collect(true, g_grid, out.g_points);
    const auto k_law = collect(false, kappa_grid, out.kappa_points);
    if (!g_law.empty()) {
        out.g_law = fit_power_law(g_law);
    }
    if (!k_law.empty()) {
        out.kappa_law = fit_power_law(k_law);
    }
    return out;
}

nlohmann::json to_json(const ScalingFit& fit, const std::string& model)
{
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& p : fit.points) {
        pts.push_back({{"N", p.n}, {"value", p.value}});
    }
    return {
        {"model", model},
        {"quadratic",
         {{"offset", fit.offset},
          {"offset_pinned", fit.offset_pinned},
          {"xi", fit.coefficient},
          {"rms_residual", fit.residual}}},
        {"free_exponent",
         {{"offset", fit.exponent_offset},
          {"amplitude", fit.exponent_amplitude},
          {"exponent", fit.exponent},
          {"rms_residual", fit.exponent_residual}}},
        {"points", pts},
    };
}

nlohmann::json to_json(const PowerLawFit& fit, const std::string& model)
{
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& [x, y] : fit.points) {
        pts.push_back({{"x", x}, {"y", y}});
    }
    return {
        {"model", model},
        {"amplitude", fit.amplitude},
        {"exponent", fit.exponent},
        {"rms_log_residual", fit.residual},
        {"points", pts},
    };
}

nlohmann::json to_json(const TCSFit& fit)
{
    return {
        {"model", "displaced_thermal"},
        {"alpha_re", fit.alpha.real()},
        {"alpha_im", fit.alpha.imag()},
        {"alpha_abs_sq", std::norm(fit.alpha)},
        {"temperature_in_omega", fit.temperature},
        {"fidelity", fit.fidelity_value},
        {"moment_fidelity", fit.moment_fidelity},
        {"mean_n", fit.mean_n},
    };
}

} // namespace srotto
