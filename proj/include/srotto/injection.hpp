// injection.hpp: Repeated cluster injection (ignition stroke) and steady-state statistics

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "srotto/hilbert.hpp"
#include "srotto/lindblad.hpp"

namespace srotto {

struct ProtocolConfig {
    int atoms = 2;
    int num_injections = 250;
    double t_int = 1.0;
    double period = 6.0;
    double T_h = 0.001;
    double T_c = 0.5;
    int n_max = 40;
    int samples_per_cycle = 10;
    double burn_in_fraction = 0.4;
    RotationParams rotation;
    SystemModel model;
    IntegratorConfig integrator;

    void validate() const;
    double total_time() const noexcept { return num_injections * period; }
};

struct Sample {
    double t;
    double mean_n;
    double T_eff; // 0 when mean_n <= 0
};

struct CycleSummary {
    int cycle;
    double mean_n_end;
    double alpha_abs_end; // |Tr(rho_f a)| at the end of the cycle
};

struct TimeSeries {
    std::vector<Sample> samples; // first sample is t = 0
    std::vector<CycleSummary> per_cycle;
    DensityMatrix final_field_state;
    bool truncation_warning = false;
    double max_top_population = 0.0;
};

struct SteadyStateStats {
    double mean_n_ss = 0.0;
    double T_eff_ss = 0.0;
    double std_n = 0.0;
    double std_T = 0.0;
    int cycles_used = 0;
};

// Thermal single-atom states at T_h in the model's spin representation, rotated by R(zeta).
DensityMatrix prepare_cluster(const ProtocolConfig& config);

TimeSeries run_ignition(const ProtocolConfig& config);

// Time averages over samples after the burn-in window. Needs >= 50 injections and
// >= 10 post-burn-in cycles.
SteadyStateStats steady_state_stats(const TimeSeries& series, const ProtocolConfig& config);

// First cycle whose end-of-cycle <n> closes `fraction` of the gap between the initial value
// and `target`; -1 if never reached.
int cycles_to_fraction(const TimeSeries& series, double target, double fraction = 0.9);

// Relative change of the end-of-cycle <n> between the start and end of the last quarter.
double last_quarter_drift(const TimeSeries& series);

struct DecoherencePoint {
    DissipatorChannel channel;
    double gamma;
    SteadyStateStats stats;
};

// One ignition run per (channel, gamma); individual channels switch to the product
// representation. Runs execute on `jobs` workers.
std::vector<DecoherencePoint> decoherence_sweep(const ProtocolConfig& config,
                                                const std::vector<double>& gammas,
                                                const std::vector<DissipatorChannel>& channels,
                                                int jobs = 1);

double total_atomic_gamma(const SystemModel& model);
std::string ignition_filename(const ProtocolConfig& config);
void write_timeseries_csv(std::ostream& os, const TimeSeries& series);

} // namespace srotto
