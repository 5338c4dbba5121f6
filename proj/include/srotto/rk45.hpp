// rk45.hpp: Dormand–Prince 5(4) embedded pair with PI step-size control

#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <span>
#include <sstream>

#include "srotto/errors.hpp"

namespace srotto {

struct IntegratorConfig {
    double rel_tol = 1e-8;
    double abs_tol = 1e-10;
    double max_step = 0.05;
    int guard_every = 50;
    double initial_step = 0.0; // 0 selects a heuristic first step
    long max_steps = 50'000'000;
};

struct IntegratorStats {
    long accepted = 0;
    long rejected = 0;
    long rhs_evals = 0;
    double last_step = 0.0;
};

// Integrates y' = f(t, y) for a matrix ODE. State must behave like an Eigen
// dense matrix (arithmetic, cwiseAbs, cwiseMax, size).
//
//   f(t, y, dydt)           writes the derivative into dydt
//   on_accept(t, y)         after each accepted step; returns true if y was modified
//   on_stop(t, y)           at every time in `stops` (sorted, inside (t0, t1]) and at t1
template <class State>
class DormandPrince45 {
public:
    using Rhs = std::function<void(double, const State&, State&)>;
    using AcceptHook = std::function<bool(double, State&)>;
    using StopHook = std::function<void(double, const State&)>;

    explicit DormandPrince45(IntegratorConfig cfg) : cfg_(cfg) {}

    const IntegratorStats& stats() const noexcept { return stats_; }

    void integrate(const Rhs& f, State& y, double t0, double t1, std::span<const double> stops = {},
                   const AcceptHook& on_accept = {}, const StopHook& on_stop = {})
    {
        require(t1 >= t0, ErrorKind::InvalidArgument, "integration interval must have t1 >= t0");
        if (t1 == t0) {
            if (on_stop) {
                on_stop(t1, y);
            }
            return;
        }

        State k1 = y;
        f(t0, y, k1);
        ++stats_.rhs_evals;

        double t = t0;
        double h = cfg_.initial_step > 0.0 ? cfg_.initial_step : initial_step(y, k1);
        h = std::min(h, cfg_.max_step);
        double err_old = 1e-4;

        std::size_t next_stop = 0;
        while (next_stop < stops.size() && stops[next_stop] <= t0) {
            ++next_stop;
        }

        State k2, k3, k4, k5, k6, k7, y_tmp, y_new, err_vec;
        long steps_since_guard = 0;

        while (t < t1) {
            const double target = next_stop < stops.size() ? std::min(stops[next_stop], t1) : t1;
            const double span = target - t;
            bool lands = false;
            double h_try = h;
            if (h_try >= span * (1.0 - 1e-12)) {
                h_try = span;
                lands = true;
            }
            const double h_min = 1e-14 * std::max(1.0, std::abs(t));
            if (h_try < h_min && !lands) {
                std::ostringstream os;
                os << "step size underflow (h=" << h_try << ") at t=" << t
                   << "; problem is too stiff for the explicit integrator";
                fail(ErrorKind::Stiffness, os.str());
            }
            if (stats_.accepted + stats_.rejected >= cfg_.max_steps) {
                fail(ErrorKind::Stiffness, "maximum number of integrator steps exceeded");
            }

            // Stages.
            y_tmp = y + h_try * (a21 * k1);
            f(t + c2 * h_try, y_tmp, k2);
            y_tmp = y + h_try * (a31 * k1 + a32 * k2);
            f(t + c3 * h_try, y_tmp, k3);
            y_tmp = y + h_try * (a41 * k1 + a42 * k2 + a43 * k3);
            f(t + c4 * h_try, y_tmp, k4);
            y_tmp = y + h_try * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
            f(t + c5 * h_try, y_tmp, k5);
            y_tmp = y + h_try * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
            f(t + h_try, y_tmp, k6);
            y_new = y + h_try * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
            f(lands ? target : t + h_try, y_new, k7);
            stats_.rhs_evals += 6;

            err_vec = h_try * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
            const double err = error_norm(y, y_new, err_vec);

            if (!std::isfinite(err)) {
                fail(ErrorKind::Integrity, "non-finite error estimate in integrator");
            }

            const double fac11 = std::pow(err, kExpo1);
            if (err <= 1.0) {
                double fac = fac11 / std::pow(err_old, kBeta);
                fac = std::clamp(fac / kSafe, kFacMaxInv, kFacMinInv);
                const double h_next = std::min(h_try / fac, cfg_.max_step);
                err_old = std::max(err, 1e-4);

                t = lands ? target : t + h_try;
                y.swap(y_new);
                k1.swap(k7);
                ++stats_.accepted;
                stats_.last_step = h_try;
                // A landing step is usually truncated; keep the controller's proposal.
                if (!lands || h_next < h) {
                    h = h_next;
                }

                bool modified = false;
                if (on_accept) {
                    modified = on_accept(t, y);
                }
                if (cfg_.guard_every > 0 && ++steps_since_guard >= cfg_.guard_every) {
                    steps_since_guard = 0;
                    if (guard_) {
                        modified = guard_(t, y) || modified;
                    }
                }
                if (modified) {
                    f(t, y, k1);
                    ++stats_.rhs_evals;
                }
                if (lands) {
                    if (next_stop < stops.size() && stops[next_stop] <= target) {
                        while (next_stop < stops.size() && stops[next_stop] <= target) {
                            ++next_stop;
                        }
                        if (on_stop && target < t1) {
                            on_stop(t, y);
                        }
                    }
                }
            } else {
                h = h_try / std::min(kFacMinInv, fac11 / kSafe);
                ++stats_.rejected;
            }
        }
        if (on_stop) {
            on_stop(t1, y);
        }
    }

    // Periodic integrity hook run every cfg.guard_every accepted steps; returns true if
    // the state was modified.
    void set_guard(AcceptHook guard) { guard_ = std::move(guard); }

private:
    double error_norm(const State& y, const State& y_new, const State& err) const
    {
        const auto scale =
            (cfg_.abs_tol + cfg_.rel_tol * y.cwiseAbs().cwiseMax(y_new.cwiseAbs()).array()).eval();
        const double sq = (err.cwiseAbs().array() / scale).square().sum();
        return std::sqrt(sq / static_cast<double>(y.size()));
    }

    double initial_step(const State& y, const State& dydt) const
    {
        const auto scale = (cfg_.abs_tol + cfg_.rel_tol * y.cwiseAbs().array()).eval();
        const double n = static_cast<double>(y.size());
        const double d0 = std::sqrt((y.cwiseAbs().array() / scale).square().sum() / n);
        const double d1 = std::sqrt((dydt.cwiseAbs().array() / scale).square().sum() / n);
        double h = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
        return std::min(h, cfg_.max_step);
    }

    static constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;
    static constexpr double a21 = 1.0 / 5.0;
    static constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
    static constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
    static constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                            a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
    static constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                            a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
    static constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                            b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
    static constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                            e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

    // Hairer's DOPRI5 controller constants.
    static constexpr double kBeta = 0.04;
    static constexpr double kExpo1 = 0.2 - kBeta * 0.75;
    static constexpr double kSafe = 0.9;
    static constexpr double kFacMinInv = 5.0;  // h shrinks by at most 5x
    static constexpr double kFacMaxInv = 0.1;  // h grows by at most 10x

    IntegratorConfig cfg_;
    IntegratorStats stats_;
    AcceptHook guard_;
};

} // namespace srotto
