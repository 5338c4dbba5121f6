// injection.cpp: Ignition stroke: repeated cluster injection into the cavity

#include "srotto/injection.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

#include "srotto/errors.hpp"
#include "srotto/format.hpp"
#include "srotto/otto.hpp"
#include "srotto/parallel.hpp"

namespace srotto {

namespace {

Sample make_sample(double t, double mean_n, double omega)
{
    return {t, mean_n, mean_n > 0.0 ? effective_temperature(mean_n, omega) : 0.0};
}

// <n> on the (atoms, field) space straight from the diagonal.
double composite_mean_n(const Matrix& rho, Index field_dim)
{
    double n = 0.0;
    for (Index k = 0; k < rho.rows(); ++k) {
        n += static_cast<double>(k % field_dim) * rho(k, k).real();
    }
    return n;
}

double field_mean_n(const Matrix& rho)
{
    double n = 0.0;
    for (Index k = 0; k < rho.rows(); ++k) {
        n += static_cast<double>(k) * rho(k, k).real();
    }
    return n;
}

cplx field_alpha(const Matrix& rho)
{
    // Tr(rho a) = sum_n sqrt(n) rho(n, n-1)
    cplx s{0.0, 0.0};
    for (Index n = 1; n < rho.rows(); ++n) {
        s += std::sqrt(static_cast<double>(n)) * rho(n, n - 1);
    }
    return s;
}

[[noreturn]] void rethrow_with_cycle(const Error& e, int cycle, const char* stage)
{
    std::ostringstream os;
    os << "cycle " << cycle << " (" << stage << "): " << e.what();
    throw Error(e.kind(), os.str());
}

} // namespace

void ProtocolConfig::validate() const
{
    require(atoms >= 1, ErrorKind::Config, "protocol.N must be >= 1");
    require(num_injections >= 1, ErrorKind::Config, "protocol.num_injections must be >= 1");
    require(t_int > 0.0, ErrorKind::Config, "protocol.t_int must be > 0");
    require(period >= t_int, ErrorKind::Config, "protocol.period must be >= t_int");
    require(T_h > 0.0 && T_c > 0.0, ErrorKind::Config, "temperatures must be > 0");
    require(n_max >= 1, ErrorKind::Config, "protocol.n_max must be >= 1");
    require(samples_per_cycle >= 1, ErrorKind::Config, "protocol.samples_per_cycle must be >= 1");
    require(burn_in_fraction >= 0.0 && burn_in_fraction < 1.0, ErrorKind::Config,
            "protocol.burn_in must lie in [0, 1)");
    model.validate();
}

DensityMatrix prepare_cluster(const ProtocolConfig& config)
{
    const HilbertSpace spin = config.model.representation == SpinRepresentation::Product
                                  ? HilbertSpace::product_spin(config.atoms)
                                  : HilbertSpace::collective_spin(config.atoms);
    const DensityMatrix thermal = thermal_atoms(spin, {config.T_h, config.model.omega_a});
    return rotate_cluster(thermal, config.rotation);
}

TimeSeries run_ignition(const ProtocolConfig& config)
{
    config.validate();
    const SystemModel& model = config.model;
    const HilbertSpace space = system_space(model, config.atoms, config.n_max);
    const HilbertSpace field = HilbertSpace::fock(config.n_max);
    const Index field_dim = field.dim();

    const OperatorMatrix h = build_hamiltonian(model, space);
    const LindbladGenerator interaction = LindbladGenerator::for_model(model, h);
    const LindbladGenerator free_field = LindbladGenerator::free_field(model, field);

    const DensityMatrix cluster = prepare_cluster(config);
    DensityMatrix rho_f = thermal_field(field, {config.T_c, model.omega_f});

    // Sampling grid within one period, split at t_int.
    const double dt = config.period / config.samples_per_cycle;
    std::vector<double> int_times;
    std::vector<double> free_times;
    for (int j = 1; j <= config.samples_per_cycle; ++j) {
        const double off = j * dt;
        if (off <= config.t_int * (1.0 + 1e-12)) {
            int_times.push_back(std::min(off, config.t_int));
        } else {
            free_times.push_back(off - config.t_int);
        }
    }
    if (!free_times.empty()) {
        free_times.back() = config.period - config.t_int;
    }

    TimeSeries series{{}, {}, rho_f, false, 0.0};
    series.samples.reserve(1 + static_cast<std::size_t>(config.num_injections) *
                                   config.samples_per_cycle);
    series.samples.push_back(make_sample(0.0, field_mean_n(rho_f.entries()), model.omega_f));

    for (int cycle = 0; cycle < config.num_injections; ++cycle) {
        const double t0 = cycle * config.period;

        EvolveOptions int_opts;
        int_opts.integrator = config.integrator;
        int_opts.sample_times = int_times;
        int_opts.on_sample = [&](double t, const Matrix& m) {
            series.samples.push_back(
                make_sample(t0 + t, composite_mean_n(m, field_dim), model.omega_f));
        };
        DensityMatrix rho_sys = tensor(cluster, rho_f);
        try {
            rho_sys = evolve(interaction, rho_sys, config.t_int, int_opts).state;
        } catch (const Error& e) {
            rethrow_with_cycle(e, cycle, "interaction");
        }
        rho_f = partial_trace(rho_sys, 1);

        const double free_duration = config.period - config.t_int;
        if (free_duration > 0.0) {
            EvolveOptions free_opts;
            free_opts.integrator = config.integrator;
            free_opts.sample_times = free_times;
            free_opts.on_sample = [&](double t, const Matrix& m) {
                series.samples.push_back(
                    make_sample(t0 + config.t_int + t, field_mean_n(m), model.omega_f));
            };
            try {
                rho_f = evolve(free_field, rho_f, free_duration, free_opts).state;
            } catch (const Error& e) {
                rethrow_with_cycle(e, cycle, "free evolution");
            }
        }

        const double top = top_level_population(rho_f);
        series.max_top_population = std::max(series.max_top_population, top);
        if (top > 1e-7) {
            series.truncation_warning = true;
        }
        series.per_cycle.push_back(
            {cycle, field_mean_n(rho_f.entries()), std::abs(field_alpha(rho_f.entries()))});
    }

    series.final_field_state = DensityMatrix(field, rho_f.entries());
    return series;
}

SteadyStateStats steady_state_stats(const TimeSeries& series, const ProtocolConfig& config)
{
    if (config.num_injections < 50) {
        std::ostringstream os;
        os << "steady-state statistics need >= 50 injections (got " << config.num_injections << ")";
        fail(ErrorKind::InsufficientData, os.str());
    }
    const int burn_cycles =
        static_cast<int>(std::floor(config.burn_in_fraction * config.num_injections));
    const int used = config.num_injections - burn_cycles;
    require(used >= 10, ErrorKind::InsufficientData,
            "fewer than 10 cycles remain after the burn-in window");
    const double t_start = burn_cycles * config.period;

    double sum_n = 0.0;
    double sum_t = 0.0;
    std::size_t count = 0;
    for (const auto& s : series.samples) {
        if (s.t > t_start) {
            sum_n += s.mean_n;
            sum_t += s.T_eff;
            ++count;
        }
    }
    require(count > 0, ErrorKind::InsufficientData, "no samples after the burn-in window");
    const double mean_n = sum_n / count;
    const double mean_t = sum_t / count;
    double var_n = 0.0;
    double var_t = 0.0;
    for (const auto& s : series.samples) {
        if (s.t > t_start) {
            var_n += (s.mean_n - mean_n) * (s.mean_n - mean_n);
            var_t += (s.T_eff - mean_t) * (s.T_eff - mean_t);
        }
    }
    SteadyStateStats out;
    out.mean_n_ss = mean_n;
    out.T_eff_ss = mean_t;
    out.std_n = std::sqrt(var_n / count);
    out.std_T = std::sqrt(var_t / count);
    out.cycles_used = used;
    return out;
}

int cycles_to_fraction(const TimeSeries& series, double target, double fraction)
{
    const double start = series.samples.front().mean_n;
    const double goal = start + fraction * (target - start);
    for (const auto& c : series.per_cycle) {
        if ((target >= start && c.mean_n_end >= goal) || (target < start && c.mean_n_end <= goal)) {
            return c.cycle + 1;
        }
    }
    return -1;
}

double last_quarter_drift(const TimeSeries& series)
{
    const auto& pc = series.per_cycle;
    require(pc.size() >= 4, ErrorKind::InsufficientData, "need at least four cycles");
    const double a = pc[pc.size() - pc.size() / 4 - 1].mean_n_end;
    const double b = pc.back().mean_n_end;
    return std::abs(b - a) / std::max(std::abs(b), 1e-300);
}

std::vector<DecoherencePoint> decoherence_sweep(const ProtocolConfig& config,
                                                const std::vector<double>& gammas,
                                                const std::vector<DissipatorChannel>& channels,
                                                int jobs)
{
    std::vector<DecoherencePoint> out;
    std::vector<ProtocolConfig> runs;
    for (auto ch : channels) {
        for (double g : gammas) {
            ProtocolConfig c = config;
            c.model.atomic_dissipators = {{ch, g}};
            if (is_individual(ch)) {
                c.model.representation = SpinRepresentation::Product;
            }
            c.validate();
            runs.push_back(c);
            out.push_back({ch, g, {}});
        }
    }
    parallel_for(runs.size(), jobs, [&](std::size_t i) {
        const TimeSeries ts = run_ignition(runs[i]);
        out[i].stats = steady_state_stats(ts, runs[i]);
    });
    return out;
}

double total_atomic_gamma(const SystemModel& model)
{
    double g = 0.0;
    for (const auto& d : model.atomic_dissipators) {
        g += d.gamma;
    }
    return g;
}

std::string ignition_filename(const ProtocolConfig& config)
{
    std::ostringstream os;
    os << "ignition_N" << config.atoms << "_g" << fmt_short(config.model.g) << "_k"
       << fmt_short(config.model.kappa) << "_gam" << fmt_short(total_atomic_gamma(config.model))
       << ".csv";
    return os.str();
}

void write_timeseries_csv(std::ostream& os, const TimeSeries& series)
{
    os << "t,mean_n,T_eff\n";
    for (const auto& s : series.samples) {
        os << fmt_num(s.t) << ',' << fmt_num(s.mean_n) << ',' << fmt_num(s.T_eff) << '\n';
    }
}

} // namespace srotto
