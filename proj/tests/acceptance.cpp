// acceptance.cpp: end-to-end acceptance criteria, one PASS/FAIL line each

#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"

#include "srotto/config.hpp"
#include "srotto/cost.hpp"
#include "srotto/errors.hpp"
#include "srotto/fitting.hpp"
#include "srotto/injection.hpp"
#include "srotto/lindblad.hpp"
#include "srotto/otto.hpp"
#include "srotto/parallel.hpp"

using namespace srotto;

namespace {

// Tolerances and bands.
constexpr double kInitialOccupancy = 0.1565, kInitialOccupancyTol = 1e-3;
constexpr double kXiNLo = 0.076, kXiNHi = 0.114;
constexpr double kXiTLo = 0.08, kXiTHi = 0.12;
constexpr double kExpLo = 1.7, kExpHi = 2.3;
constexpr double kMicromaser = 0.100, kMicromaserTol = 1e-3;
constexpr double kTcsFidelity = 0.99, kAlphaCoef = 0.1, kAlphaBand = 0.30;
constexpr double kWmaxLo = 0.068, kWmaxHi = 0.112, kOmegaLMax = 0.01;
constexpr double kDecayRelTol = 1e-6, kRabiTol = 1e-6;
constexpr double kFirstLawTol = 1e-12, kClosedFormTol = 1e-6;
constexpr double kXiGLo = 1.8, kXiGHi = 2.8, kXiKLo = -1.0, kXiKHi = -0.4;
constexpr double kCostRatioMin = 1e3;
constexpr double kDickeExpLo = 1.5, kDickeExpHi = 2.5, kDickeCoefLo = 0.3, kDickeCoefHi = 3.0;
constexpr double kTrace = 1e-8, kHerm = 1e-10, kPos = -1e-8;

struct Line {
    int id;
    bool pass;
    std::string text;
};

std::vector<Line> g_lines;

void report(int id, bool pass, const std::string& text)
{
    g_lines.push_back({id, pass, text});
    std::printf("criterion %2d  %s  %s\n", id, pass ? "PASS" : "FAIL", text.c_str());
    std::fflush(stdout);
}

std::string num(double v, int prec = 6)
{
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    return buf;
}

bool within(double v, double lo, double hi) { return v >= lo && v <= hi; }

int default_jobs()
{
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

// ---------------------------------------------------------------------------
// Shared ignition runs at paper defaults, N = 2..6.

struct Run {
    int n;
    SteadyStateStats stats;
    TimeSeries series;
    TCSFit tcs;
};

std::vector<Run> ignition_runs(const std::vector<int>& atoms, const ProtocolConfig& base, int jobs)
{
    std::vector<std::optional<Run>> slots(atoms.size());
    parallel_for(atoms.size(), jobs, [&](std::size_t i) {
        ProtocolConfig c = base;
        c.atoms = atoms[i];
        TimeSeries ts = run_ignition(c);
        const SteadyStateStats st = steady_state_stats(ts, c);
        const TCSFit tcs = fit_thermal_coherent_state(ts.final_field_state);
        slots[i] = Run{atoms[i], st, std::move(ts), tcs};
    });
    std::vector<Run> out;
    for (auto& s : slots) {
        out.push_back(std::move(*s));
    }
    return out;
}

// ---------------------------------------------------------------------------

void criterion_1()
{
    const auto rho = thermal_field(HilbertSpace::fock(40), {0.5, 1.0});
    double n = 0.0;
    for (Index k = 0; k < rho.dim(); ++k) {
        n += static_cast<double>(k) * rho.entries()(k, k).real();
    }
    report(1, std::abs(n - kInitialOccupancy) <= kInitialOccupancyTol,
           "initial thermal occupancy <n>=" + num(n) + " (want " + num(kInitialOccupancy) + " +- " +
               num(kInitialOccupancyTol) + ")");
}

void criterion_2(const std::vector<Run>& runs, const ProtocolConfig& base)
{
    const double n_c = bose_occupation(base.T_c, base.model.omega_f);
    std::vector<ScalingPoint> np, tp;
    std::ostringstream detail;
    for (const auto& r : runs) {
        np.push_back({static_cast<double>(r.n), r.stats.mean_n_ss});
        tp.push_back({static_cast<double>(r.n), r.stats.T_eff_ss});
        detail << "    N=" << r.n << " <n>_ss=" << num(r.stats.mean_n_ss) << " T_eff_ss=" << num(r.stats.T_eff_ss)
               << " std_n=" << num(r.stats.std_n, 3) << " cycles_to_90%="
               << cycles_to_fraction(r.series, r.stats.mean_n_ss) << " drift=" << num(last_quarter_drift(r.series), 3)
               << " trunc=" << (r.series.truncation_warning ? "yes" : "no") << "\n";
    }
    const ScalingFit fn = fit_quadratic_scaling(np, n_c);
    const ScalingFit ft = fit_quadratic_scaling(tp, base.T_c);
    const ScalingFit fn_free = fit_quadratic_scaling(np);
    const ScalingFit ft_free = fit_quadratic_scaling(tp);
    const bool ok = within(fn.coefficient, kXiNLo, kXiNHi) && within(ft.coefficient, kXiTLo, kXiTHi) &&
                    within(fn.exponent, kExpLo, kExpHi) && within(ft.exponent, kExpLo, kExpHi);
    report(2, ok,
           "N^2 scaling: xi_n=" + num(fn.coefficient, 4) + " in [" + num(kXiNLo) + "," + num(kXiNHi) +
               "], xi_T=" + num(ft.coefficient, 4) + " in [" + num(kXiTLo) + "," + num(kXiTHi) + "], p_n=" +
               num(fn.exponent, 4) + " p_T=" + num(ft.exponent, 4) + " in [" + num(kExpLo) + "," + num(kExpHi) +
               "]");
    std::cout << detail.str();
    std::cout << "    rms residual n=" << num(fn.residual, 3) << " T=" << num(ft.residual, 3)
              << "; free-offset xi_n=" << num(fn_free.coefficient, 4) << " xi_T=" << num(ft_free.coefficient, 4)
              << " (pinned/free agree within 2x residual: "
              << (std::abs(fn.coefficient - fn_free.coefficient) <= 2 * std::max(fn.residual, fn_free.residual) &&
                          std::abs(ft.coefficient - ft_free.coefficient) <=
                              2 * std::max(ft.residual, ft_free.residual)
                      ? "yes"
                      : "no")
              << ")\n";
}

void criterion_3()
{
    const double i1 = micromaser_intensity(1.0 / 6.0, 0.19, 1.0, 0.5, 0.03);
    report(3, std::abs(i1 - kMicromaser) <= kMicromaserTol,
           "micromaser intensity I1=" + num(i1) + " (want " + num(kMicromaser) + " +- " + num(kMicromaserTol) + ")");
}

void criterion_4(const std::vector<Run>& runs)
{
    bool ok = true;
    std::ostringstream os;
    for (const auto& r : runs) {
        const double a2 = std::norm(r.tcs.alpha);
        const double want = kAlphaCoef * r.n * r.n;
        const bool this_ok = r.tcs.fidelity_value >= kTcsFidelity && std::abs(a2 - want) <= kAlphaBand * want;
        ok = ok && this_ok;
        os << " N=" << r.n << ":F=" << num(r.tcs.fidelity_value, 5) << ",|a|^2=" << num(a2, 4);
    }
    report(4, ok,
           "thermal-coherent fit, fidelity >= " + num(kTcsFidelity) + " and |alpha|^2 = 0.1N^2 +- 30%:" + os.str());
}

std::map<int, double> criterion_5(const std::vector<Run>& runs, const ProtocolConfig& base)
{
    const WorkCurveTemplate tmpl{1.0, base.T_c, base.n_max + 1};
    const std::vector<double> grid = default_omega_L_grid();
    bool decreasing = true, ordered = true, vanishing = true, max_at_min = true;
    std::vector<std::vector<OttoResult>> curves;
    std::vector<ScalingPoint> wmax;
    std::map<int, double> wmax_by_n;
    for (const auto& r : runs) {
        auto c = work_curve(tmpl, r.stats.mean_n_ss, grid);
        for (std::size_t k = 1; k < c.size(); ++k) {
            decreasing = decreasing && c[k].work < c[k - 1].work;
        }
        const double at[] = {kOmegaLMax};
        const double w = work_curve(tmpl, r.stats.mean_n_ss, at).front().work;
        vanishing = vanishing && std::abs(c.back().work) <= 0.011 * w;
        for (const auto& x : c) {
            max_at_min = max_at_min && x.work <= w;
        }
        wmax.push_back({static_cast<double>(r.n), w});
        wmax_by_n[r.n] = w;
        curves.push_back(std::move(c));
    }
    for (std::size_t i = 1; i < curves.size(); ++i) {
        for (std::size_t k = 0; k < grid.size(); ++k) {
            ordered = ordered && curves[i][k].work > curves[i - 1][k].work;
        }
    }
    const double c = pinned_quadratic_coefficient(wmax, 0.0);
    const bool ok = decreasing && ordered && vanishing && max_at_min && within(c, kWmaxLo, kWmaxHi);
    report(5, ok,
           std::string("work curves: decreasing=") + (decreasing ? "yes" : "no") + " ordered_in_N=" +
               (ordered ? "yes" : "no") + " W(0.99)->0=" + (vanishing ? "yes" : "no") + "; W_max=c N^2 at omega_L=" +
               num(kOmegaLMax) + ", eta=" + num(1.0 - kOmegaLMax) + ": c=" + num(c, 4) + " in [" + num(kWmaxLo) +
               "," + num(kWmaxHi) + "]");
    return wmax_by_n;
}

void criterion_6()
{
    bool ok = true;
    std::ostringstream os;

    // (a) free-field decay
    {
        SystemModel m;
        const auto field = HilbertSpace::fock(40);
        const auto rho0 = displaced_thermal_state(field, {0.7, 1.0}, cplx{1.1, 0.4});
        double n0 = 0.0;
        for (Index k = 0; k < rho0.dim(); ++k) {
            n0 += k * rho0.entries()(k, k).real();
        }
        double worst = 0.0;
        const std::vector<double> times{2.0, 5.0, 10.0, 20.0};
        EvolveOptions o;
        o.sample_times = times;
        o.on_sample = [&](double t, const Matrix& r) {
            double n = 0.0;
            for (Index k = 0; k < r.rows(); ++k) {
                n += k * r(k, k).real();
            }
            worst = std::max(worst, std::abs(n - n0 * std::exp(-m.kappa * t)) / (n0 * std::exp(-m.kappa * t)));
        };
        evolve_free_field(m, rho0, times.back(), o);
        ok = ok && worst <= kDecayRelTol;
        os << "(a) decay rel.err=" << num(worst, 3);
    }
    // (b) vacuum Rabi
    {
        SystemModel m;
        m.kappa = 0.0;
        const auto space = system_space(m, 1, 3);
        const auto h = build_hamiltonian(m, space);
        Matrix psi = Matrix::Zero(space.dim(), space.dim());
        psi(4, 4) = 1.0; // |e, 0>
        const DensityMatrix rho0(space, psi);
        std::vector<double> times;
        for (int k = 1; k <= 40; ++k) {
            times.push_back(0.5 * k);
        }
        double worst = 0.0;
        EvolveOptions o;
        o.sample_times = times;
        o.on_sample = [&](double t, const Matrix& r) {
            double pe = 0.0;
            for (Index k = 4; k < 8; ++k) {
                pe += r(k, k).real();
            }
            worst = std::max(worst, std::abs(pe - std::pow(std::cos(m.g * t), 2)));
        };
        evolve(m, h, rho0, times.back(), o);
        ok = ok && worst <= kRabiTol;
        os << "; (b) Rabi err=" << num(worst, 3);
    }
    // (c) invariants on every accepted step of interaction and free strokes
    {
        ProtocolConfig c;
        c.atoms = 3;
        const auto space = system_space(c.model, c.atoms, c.n_max);
        const auto h = build_hamiltonian(c.model, space);
        const auto field = HilbertSpace::fock(c.n_max);
        auto rho_f = displaced_thermal_state(field, {0.5, 1.0}, cplx{0.8, -0.3});
        double tr = 0.0, herm = 0.0, mineig = 0.0;
        long steps = 0;
        EvolveOptions o;
        o.on_step = [&](double, const Matrix& r) {
            tr = std::max(tr, std::abs(r.trace() - cplx{1.0, 0.0}));
            herm = std::max(herm, (r - r.adjoint()).cwiseAbs().maxCoeff());
            Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (r + r.adjoint()), Eigen::EigenvaluesOnly);
            mineig = std::min(mineig, es.eigenvalues().minCoeff());
            ++steps;
        };
        for (int cycle = 0; cycle < 3; ++cycle) {
            auto sys = evolve(c.model, h, tensor(prepare_cluster(c), rho_f), c.t_int, o).state;
            rho_f = partial_trace(sys, 1);
            rho_f = evolve_free_field(c.model, rho_f, c.period - c.t_int, o).state;
        }
        const bool inv = tr <= kTrace && herm <= kHerm && mineig >= kPos;
        ok = ok && inv;
        os << "; (c) " << steps << " steps |Tr-1|<=" << num(tr, 2) << " herm<=" << num(herm, 2)
           << " min_eig>=" << num(mineig, 2);
    }
    // (d) tolerance halving
    {
        ProtocolConfig c;
        c.atoms = 2;
        c.num_injections = 5;
        auto final_n = [&](double rtol) {
            ProtocolConfig cc = c;
            cc.integrator.rel_tol = rtol;
            cc.integrator.abs_tol = rtol * 1e-2;
            cc.integrator.max_step = 1.0; // let the tolerance, not the step cap, set the step
            return run_ignition(cc).per_cycle.back().mean_n_end;
        };
        const double coarse = 1e-6;
        const double a = final_n(coarse);
        const double b = final_n(coarse / 2);
        const double diff = std::abs(a - b);
        ok = ok && diff < coarse * std::max(1.0, std::abs(a));
        os << "; (d) |dn| halving rtol=" << num(diff, 3);
    }
    report(6, ok, "integrator checks: " + os.str());
}

void criterion_7()
{
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst_law = 0.0;
    double worst_brute = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        const int levels = 2 + static_cast<int>(u(rng) * 60);
        std::vector<double> ph(levels), pl(levels);
        double sh = 0.0, sl = 0.0;
        for (int k = 0; k < levels; ++k) {
            ph[k] = u(rng);
            pl[k] = u(rng);
            sh += ph[k];
            sl += pl[k];
        }
        for (int k = 0; k < levels; ++k) {
            ph[k] /= sh;
            pl[k] /= sl;
        }
        const double wl = 0.01 + 0.98 * u(rng);
        const OttoCycleSpec spec(wl, 1.0, 0.5, levels);
        const OttoResult r = otto_quantities(spec, ph, pl);
        double qin = 0.0, qout = 0.0, w = 0.0;
        for (int k = 0; k < levels; ++k) {
            qin += k * 1.0 * (ph[k] - pl[k]);
            qout += k * wl * (pl[k] - ph[k]);
            w += k * (1.0 - wl) * (ph[k] - pl[k]);
        }
        worst_law = std::max(worst_law, std::abs(r.work - (r.q_in + r.q_out)));
        worst_brute = std::max({worst_brute, std::abs(r.q_in - qin), std::abs(r.q_out - qout), std::abs(r.work - w)});
    }
    double worst_closed = 0.0;
    for (double th : {0.6, 0.9, 1.5, 3.0}) {
        for (double wl : {0.05, 0.3, 0.7}) {
            const OttoCycleSpec spec(wl, th, 0.5, 200);
            const OttoResult r = otto_quantities_thermal(spec);
            const double nh = bose_occupation(th, 1.0);
            const double nl = bose_occupation(spec.T_L(), wl);
            worst_closed = std::max(worst_closed, std::abs(r.work - (1.0 - wl) * (nh - nl)));
        }
    }
    const bool ok = worst_law <= kFirstLawTol && worst_brute <= kFirstLawTol && worst_closed <= kClosedFormTol;
    report(7, ok,
           "first law: |W-(Qin+Qout)|=" + num(worst_law, 3) + ", vs direct sums " + num(worst_brute, 3) +
               " (<= " + num(kFirstLawTol) + "); thermal closed form err=" + num(worst_closed, 3) + " (<= " +
               num(kClosedFormTol) + ")");
}

void criterion_8(const ProtocolConfig& base, int jobs)
{
    const double kappa = base.model.kappa;
    const std::vector<double> gammas{0.0, kappa, 3 * kappa, 6 * kappa};
    const std::vector<DissipatorChannel> channels{DissipatorChannel::CollectiveLowering,
                                                  DissipatorChannel::CollectiveDephasing};
    const std::vector<int> atoms{2, 3};
    // T[channel][gamma][N]
    std::map<DissipatorChannel, std::map<double, std::map<int, double>>> t;
    for (int n : atoms) {
        ProtocolConfig c = base;
        c.atoms = n;
        for (const auto& p : decoherence_sweep(c, gammas, channels, jobs)) {
            t[p.channel][p.gamma][n] = p.stats.T_eff_ss;
        }
    }
    bool bounded = true, xi_decreasing = true, dephasing_worse = true, grows = true;
    std::ostringstream os;
    for (auto ch : channels) {
        double prev_xi = std::numeric_limits<double>::infinity();
        os << "    " << to_string(ch) << ":";
        for (double g : gammas) {
            std::vector<ScalingPoint> pts;
            for (int n : atoms) {
                const double v = t[ch][g][n];
                pts.push_back({static_cast<double>(n), v});
                if (g > 0.0) {
                    bounded = bounded && v > base.T_c && v < t[ch][0.0][n];
                }
            }
            grows = grows && t[ch][g][3] > t[ch][g][2];
            const double xi = pinned_quadratic_coefficient(pts, base.T_c);
            if (g > 0.0) {
                xi_decreasing = xi_decreasing && xi < prev_xi;
            }
            prev_xi = xi;
            os << " gamma=" << num(g, 3) << "[T2=" << num(t[ch][g][2], 4) << ",T3=" << num(t[ch][g][3], 4)
               << ",xi=" << num(xi, 4) << "]";
        }
        os << "\n";
    }
    for (double g : gammas) {
        if (g == 0.0) {
            continue;
        }
        for (int n : atoms) {
            dephasing_worse = dephasing_worse && t[DissipatorChannel::CollectiveDephasing][g][n] <=
                                                     t[DissipatorChannel::CollectiveLowering][g][n];
        }
    }
    // Individual channels at the largest rate, for comparison only.
    const double g_max = gammas.back();
    for (int n : atoms) {
        ProtocolConfig c = base;
        c.atoms = n;
        std::map<DissipatorChannel, double> ti;
        for (const auto& p : decoherence_sweep(
                 c, {g_max}, {DissipatorChannel::IndividualLowering, DissipatorChannel::IndividualDephasing}, jobs)) {
            ti[p.channel] = p.stats.T_eff_ss;
        }
        os << "    individual at gamma=" << num(g_max, 3) << ", N=" << n
           << ": lowering T=" << num(ti[DissipatorChannel::IndividualLowering], 4)
           << " dephasing T=" << num(ti[DissipatorChannel::IndividualDephasing], 4) << " (dephasing <= lowering: "
           << (ti[DissipatorChannel::IndividualDephasing] <= ti[DissipatorChannel::IndividualLowering] ? "yes" : "no")
           << ", reported only)\n";
    }
    const bool ok = bounded && xi_decreasing && dephasing_worse && grows;
    report(8, ok,
           std::string("decoherence: T_c < T_eff(gamma) < T_eff(0)=") + (bounded ? "yes" : "no") +
               " xi decreasing in gamma=" + (xi_decreasing ? "yes" : "no") + " collective dephasing <= lowering=" +
               (dephasing_worse ? "yes" : "no") + " still growing with N=" + (grows ? "yes" : "no"));
    std::cout << os.str();
}

void criterion_9(const ProtocolConfig& base, int jobs)
{
    ProtocolConfig c = base;
    c.num_injections = 150;
    const XiStudy s =
        xi_parameter_study(c, {0.1, 0.15, 0.19, 0.25, 0.3}, {0.01, 0.02, 0.03, 0.05, 0.1}, {2, 3, 4}, jobs);
    const bool ok = within(s.g_law.exponent, kXiGLo, kXiGHi) && within(s.kappa_law.exponent, kXiKLo, kXiKHi);
    report(9, ok,
           "xi study: xi(g) ~ " + num(s.g_law.amplitude, 3) + " g^" + num(s.g_law.exponent, 4) + " (exp in [" +
               num(kXiGLo) + "," + num(kXiGHi) + "]), xi(kappa) ~ " + num(s.kappa_law.amplitude, 3) + " kappa^" +
               num(s.kappa_law.exponent, 4) + " (exp in [" + num(kXiKLo) + "," + num(kXiKHi) + "])");
    std::cout << "    g:";
    for (const auto& [g, f] : s.g_points) {
        std::cout << " " << num(g, 3) << "->" << num(f.coefficient, 4);
    }
    std::cout << "\n    kappa:";
    for (const auto& [k, f] : s.kappa_points) {
        std::cout << " " << num(k, 3) << "->" << num(f.coefficient, 4);
    }
    std::cout << "\n    log rms residual g=" << num(s.g_law.residual, 3) << " kappa=" << num(s.kappa_law.residual, 3)
              << "\n";
}

void criterion_10(const std::map<int, double>& wmax)
{
    CostParams p;
    p.inv_tau_gamma = 2.0;
    p.divergence = 0.5;
    const double up = pulse_energy(p);
    const CostReport paper = total_cost_report_from_energy(3.0, 2, 250, 0.35);
    bool ratio_ok = !wmax.empty();
    std::ostringstream os;
    for (const auto& [n, w] : wmax) {
        const CostReport r = total_cost_report(p, n, 250, w);
        ratio_ok = ratio_ok && r.ratio && *r.ratio > kCostRatioMin;
        os << " N=" << n << ":" << num(r.ratio.value_or(0.0), 4);
    }
    const bool ok = std::abs(up - std::numbers::pi * std::numbers::pi / 3.0) <= 1e-12 &&
                    paper.total_hbar_omega == 1500.0 && ratio_ok;
    report(10, ok,
           "coherence cost: U_p=" + num(up, 8) + " (pi^2/3), U_cost(N=2,m=250,U_p=3)=" +
               num(paper.total_hbar_omega, 8) + ", cost/work >" + num(kCostRatioMin) + ":" + os.str());
}

void criterion_11(const ProtocolConfig& base, const std::vector<Run>& tc_runs, int jobs)
{
    const std::vector<int> atoms{2, 3, 4};
    std::vector<ProtocolConfig> configs;
    for (int n : atoms) {
        ProtocolConfig c = base;
        c.atoms = n;
        c.num_injections = 100;
        c.model.hamiltonian_kind = HamiltonianKind::Dicke;
        c.model.g = 0.36;
        c.n_max = dicke_n_max(n);
        configs.push_back(c);
    }
    std::vector<SteadyStateStats> stats(configs.size());
    std::vector<bool> trunc(configs.size());
    parallel_for(configs.size(), jobs, [&](std::size_t i) {
        const TimeSeries ts = run_ignition(configs[i]);
        stats[i] = steady_state_stats(ts, configs[i]);
        trunc[i] = ts.truncation_warning;
    });
    std::vector<ScalingPoint> pts;
    bool grows = true;
    std::ostringstream os;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        pts.push_back({static_cast<double>(atoms[i]), stats[i].T_eff_ss});
        if (i > 0) {
            grows = grows && stats[i].T_eff_ss > stats[i - 1].T_eff_ss;
        }
        double tc_std = std::numeric_limits<double>::quiet_NaN();
        for (const auto& r : tc_runs) {
            if (r.n == atoms[i]) {
                tc_std = r.stats.std_T;
            }
        }
        double tc_rise = std::numeric_limits<double>::quiet_NaN();
        for (const auto& r : tc_runs) {
            if (r.n == atoms[i]) {
                tc_rise = r.stats.T_eff_ss - base.T_c;
            }
        }
        const double rise = stats[i].T_eff_ss - base.T_c;
        os << "    N=" << atoms[i] << " T_eff_ss-T_c=" << num(rise, 5) << " std_T dicke=" << num(stats[i].std_T, 3)
           << " tc=" << num(tc_std, 3) << " (absolute smaller: " << (stats[i].std_T < tc_std ? "yes" : "no")
           << "; relative to T_eff-T_c dicke=" << num(stats[i].std_T / rise, 3) << " tc=" << num(tc_std / tc_rise, 3)
           << ", smaller: " << (stats[i].std_T / rise < tc_std / tc_rise ? "yes" : "no")
           << "; reported only) trunc=" << (trunc[i] ? "yes" : "no") << "\n";
    }
    const ScalingFit f = fit_quadratic_scaling(pts, base.T_c);
    const bool ok = grows && within(f.exponent, kDickeExpLo, kDickeExpHi) &&
                    within(f.exponent_amplitude, kDickeCoefLo, kDickeCoefHi);
    report(11, ok,
           std::string("Dicke g=0.36: grows with N=") + (grows ? "yes" : "no") + ", T_eff-T_c = " +
               num(f.exponent_amplitude, 4) + " N^" + num(f.exponent, 4) + " (p in [" + num(kDickeExpLo) + "," +
               num(kDickeExpHi) + "], coefficient in [" + num(kDickeCoefLo) + "," + num(kDickeCoefHi) +
               "]); xi at p=2: " + num(f.coefficient, 4));
    std::cout << os.str();
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"srotto acceptance suite"};
    std::string which = "1,2,3,4,5,6,7,8,10,11";
    int jobs = default_jobs();
    app.add_option("--criteria", which, "Comma-separated criteria to run");
    app.add_option("--jobs", jobs, "Worker threads");
    CLI11_PARSE(app, argc, argv);
    std::setvbuf(stdout, nullptr, _IOLBF, 0);

    std::set<int> sel;
    for (int k : parse_int_list(which, "--criteria")) {
        sel.insert(k);
    }
    const ProtocolConfig base;

    try {
        std::vector<Run> runs;
        std::map<int, double> wmax;
        const bool need_runs = sel.count(2) || sel.count(4) || sel.count(5) || sel.count(10) || sel.count(11);
        if (sel.count(1)) {
            criterion_1();
        }
        if (sel.count(3)) {
            criterion_3();
        }
        if (sel.count(6)) {
            criterion_6();
        }
        if (sel.count(7)) {
            criterion_7();
        }
        if (need_runs) {
            runs = ignition_runs({2, 3, 4, 5, 6}, base, jobs);
        }
        if (sel.count(2)) {
            criterion_2(runs, base);
        }
        if (sel.count(4)) {
            criterion_4(runs);
        }
        if (sel.count(5) || sel.count(10)) {
            wmax = criterion_5(runs, base);
        }
        if (sel.count(10)) {
            criterion_10(wmax);
        }
        if (sel.count(8)) {
            criterion_8(base, jobs);
        }
        if (sel.count(11)) {
            criterion_11(base, runs, jobs);
        }
        if (sel.count(9)) {
            criterion_9(base, jobs);
        }
    } catch (const Error& e) {
        std::cerr << "acceptance aborted: " << to_string(e.kind()) << ": " << e.what() << "\n";
        return 1;
    }

    int failed = 0;
    for (const auto& l : g_lines) {
        failed += l.pass ? 0 : 1;
    }
    std::printf("%zu criteria run, %d failed\n", g_lines.size(), failed);
    return failed == 0 ? 0 : 1;
}
