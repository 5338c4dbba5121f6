// commands.cpp: Subcommands of the srotto tool

#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "srotto/cost.hpp"
#include "srotto/errors.hpp"
#include "srotto/fitting.hpp"
#include "srotto/format.hpp"
#include "srotto/otto.hpp"
#include "srotto/parallel.hpp"

namespace srotto::cli {

using nlohmann::json;

namespace {

struct RunOutcome {
    ProtocolConfig config;
    TimeSeries series;
    std::optional<SteadyStateStats> stats;
    std::optional<TCSFit> tcs;
    std::string trajectory_file;
};

std::vector<RunOutcome> run_all(const std::vector<ProtocolConfig>& configs, int jobs)
{
    std::vector<std::optional<RunOutcome>> slots(configs.size());
    parallel_for(configs.size(), jobs, [&](std::size_t i) {
        const ProtocolConfig& c = configs[i];
        try {
            RunOutcome r{c, run_ignition(c), std::nullopt, std::nullopt, {}};
            if (c.num_injections >= 50) {
                r.stats = steady_state_stats(r.series, c);
            }
            r.tcs = fit_thermal_coherent_state(r.series.final_field_state);
            slots[i] = std::move(r);
        } catch (const Error& e) {
            std::ostringstream os;
            os << "N=" << c.atoms << " g=" << c.model.g << " kappa=" << c.model.kappa << ": "
               << e.what();
            throw Error(e.kind(), os.str());
        }
    });
    std::vector<RunOutcome> out;
    for (auto& s : slots) {
        out.push_back(std::move(*s));
    }
    return out;
}

std::string timeseries_csv(const TimeSeries& ts)
{
    std::ostringstream os;
    write_timeseries_csv(os, ts);
    return os.str();
}

json outcome_json(const RunOutcome& r)
{
    const auto& c = r.config;
    json j = {
        {"N", c.atoms},
        {"hamiltonian", to_string(c.model.hamiltonian_kind)},
        {"representation", to_string(c.model.representation)},
        {"g", c.model.g},
        {"kappa", c.model.kappa},
        {"atomic_gamma", total_atomic_gamma(c.model)},
        {"n_max", c.n_max},
        {"num_injections", c.num_injections},
        {"burn_in", c.burn_in_fraction},
        {"mean_n_initial", r.series.samples.front().mean_n},
        {"truncation_warning", r.series.truncation_warning},
        {"max_top_population", r.series.max_top_population},
        {"trajectory_file", r.trajectory_file},
        {"steady_state", nullptr},
        {"tcs_fit", nullptr},
    };
    if (r.stats) {
        j["steady_state"] = {
            {"mean_n", r.stats->mean_n_ss},
            {"T_eff_in_omega", r.stats->T_eff_ss},
            {"std_mean_n", r.stats->std_n},
            {"std_T_eff_in_omega", r.stats->std_T},
            {"cycles_used", r.stats->cycles_used},
            {"cycles_to_90pct", cycles_to_fraction(r.series, r.stats->mean_n_ss, 0.9)},
            {"last_quarter_drift", last_quarter_drift(r.series)},
        };
    } else {
        j["steady_state_note"] = "fewer than 50 injections; steady-state statistics skipped";
    }
    if (r.tcs) {
        j["tcs_fit"] = to_json(*r.tcs);
    }
    return j;
}

void emit_trajectories(std::vector<RunOutcome>& runs, RunManifest& manifest, const std::string& prefix)
{
    for (auto& r : runs) {
        r.trajectory_file = prefix + ignition_filename(r.config);
        manifest.write(r.trajectory_file, timeseries_csv(r.series));
    }
}

std::vector<ProtocolConfig> per_atom_configs(const ProtocolConfig& base, const std::vector<int>& atoms)
{
    std::vector<ProtocolConfig> out;
    for (int n : atoms) {
        ProtocolConfig c = base;
        c.atoms = n;
        c.validate();
        out.push_back(c);
    }
    return out;
}

const SteadyStateStats& require_stats(const RunOutcome& r)
{
    if (!r.stats) {
        fail(ErrorKind::InsufficientData,
             "steady-state statistics need >= 50 injections (protocol.num_injections)");
    }
    return *r.stats;
}

json scaling_fit_json(const std::vector<ScalingPoint>& pts, double offset, const std::string& name)
{
    json j = {{"pinned_offset", nullptr}, {"free_offset", nullptr}};
    if (pts.size() >= 3) {
        j["pinned_offset"] = to_json(fit_quadratic_scaling(pts, offset), name);
        j["free_offset"] = to_json(fit_quadratic_scaling(pts), name);
    } else {
        j["pinned_offset"] = {{"model", name},
                              {"offset", offset},
                              {"xi", pinned_quadratic_coefficient(pts, offset)},
                              {"note", "fewer than 3 distinct N; free-exponent fit skipped"}};
    }
    return j;
}

// Identity of a scaling run for reuse by `otto`.
json scaling_key(const RunConfig& c)
{
    const json full = config_to_json(c);
    return {{"physics", full["physics"]},
            {"protocol", full["protocol"]},
            {"integrator", full["integrator"]},
            {"N", full["sweep"]["N"]}};
}

} // namespace

void cmd_ignition(const RunConfig& config, const CommandOptions& opts, RunManifest& manifest)
{
    const std::vector<int> atoms = opts.atoms.empty() ? std::vector<int>{config.protocol.atoms} : opts.atoms;
    auto runs = manifest.stage("ignition", [&] {
        return run_all(per_atom_configs(config.protocol, atoms), config.jobs);
    });
    emit_trajectories(runs, manifest, "");
    json summary = json::array();
    for (const auto& r : runs) {
        summary.push_back(outcome_json(r));
    }
    manifest.write_json("ignition_summary.json", {{"runs", summary}});
}

void cmd_scaling(const RunConfig& config, RunManifest& manifest)
{
    auto runs = manifest.stage("scaling", [&] {
        return run_all(per_atom_configs(config.protocol, config.sweep.atoms), config.jobs);
    });
    emit_trajectories(runs, manifest, "");

    const double n_c = bose_occupation(config.protocol.T_c, config.protocol.model.omega_f);
    const double t_c = config.protocol.T_c;
    std::vector<ScalingPoint> n_pts, t_pts;
    std::ostringstream csv;
    csv << "N,mean_n_ss,T_eff_ss,std_mean_n,std_T_eff,alpha_abs_sq,tcs_fidelity,tcs_temperature\n";
    json run_list = json::array();
    for (const auto& r : runs) {
        const auto& s = require_stats(r);
        n_pts.push_back({static_cast<double>(r.config.atoms), s.mean_n_ss});
        t_pts.push_back({static_cast<double>(r.config.atoms), s.T_eff_ss});
        csv << r.config.atoms << ',' << fmt_num(s.mean_n_ss) << ',' << fmt_num(s.T_eff_ss) << ','
            << fmt_num(s.std_n) << ',' << fmt_num(s.std_T) << ',' << fmt_num(std::norm(r.tcs->alpha))
            << ',' << fmt_num(r.tcs->fidelity_value) << ',' << fmt_num(r.tcs->temperature) << '\n';
        run_list.push_back(outcome_json(r));
    }
    manifest.write("scaling_summary.csv", csv.str());
    manifest.write_json("scaling_fit.json",
                        {{"key", scaling_key(config)},
                         {"mean_n_c", n_c},
                         {"T_c_in_omega", t_c},
                         {"mean_n", scaling_fit_json(n_pts, n_c, "mean_n = offset + xi N^2")},
                         {"T_eff", scaling_fit_json(t_pts, t_c, "T_eff = offset + xi N^2")},
                         {"runs", run_list}});
}

void cmd_otto(const RunConfig& config, RunManifest& manifest)
{
    // Steady occupations per N, reused from a matching scaling run when present.
    std::map<int, double> n_ss;
    const auto fit_path = manifest.out_dir() / "scaling_fit.json";
    if (std::filesystem::exists(fit_path)) {
        std::ifstream in(fit_path);
        json prev = json::parse(in, nullptr, false);
        if (!prev.is_discarded() && prev.value("key", json()) == scaling_key(config)) {
            for (const auto& r : prev["runs"]) {
                if (r["steady_state"].is_object()) {
                    n_ss[r["N"].get<int>()] = r["steady_state"]["mean_n"].get<double>();
                }
            }
        }
    }
    json source = "scaling_fit.json";
    if (n_ss.size() != config.sweep.atoms.size()) {
        n_ss.clear();
        source = "computed";
        cmd_scaling(config, manifest);
        std::ifstream in(fit_path);
        const json prev = json::parse(in);
        for (const auto& r : prev["runs"]) {
            n_ss[r["N"].get<int>()] = r["steady_state"]["mean_n"].get<double>();
        }
    }

    const WorkCurveTemplate tmpl{config.otto.omega_H, config.protocol.T_c, config.protocol.n_max + 1};
    const double w_at = config.otto.omega_L_max_work;
    std::vector<ScalingPoint> wmax;
    json per_n = json::array();
    manifest.stage("otto", [&] {
        for (const auto& [n, mean_n] : n_ss) {
            const auto rows = work_curve(tmpl, mean_n, config.otto.omega_L_grid, config.otto.mode);
            std::ostringstream os;
            write_otto_csv(os, rows);
            const std::string name = "otto_N" + std::to_string(n) + ".csv";
            manifest.write(name, os.str());
            const double at[] = {w_at};
            const OttoResult top = work_curve(tmpl, mean_n, at, config.otto.mode).front();
            wmax.push_back({static_cast<double>(n), top.work});
            per_n.push_back({{"N", n},
                             {"mean_n_ss", mean_n},
                             {"curve_file", name},
                             {"W_max_in_omega_H", top.work},
                             {"q_in_in_omega_H", top.q_in},
                             {"efficiency", top.efficiency ? json(*top.efficiency) : json(nullptr)}});
        }
        return 0;
    });
    manifest.write_json("otto_summary.json",
                        {{"omega_H", config.otto.omega_H},
                         {"omega_L_at_max_work", w_at},
                         {"eta_max", 1.0 - w_at / config.otto.omega_H},
                         {"work_mode", config.otto.mode == WorkCurveMode::PhotonNumber
                                           ? "photon_number"
                                           : "thermal_distributions"},
                         {"steady_state_source", source},
                         {"per_N", per_n},
                         {"W_max_fit", scaling_fit_json(wmax, 0.0, "W_max = c N^2")}});
}

void cmd_decoherence(const RunConfig& config, RunManifest& manifest)
{
    std::vector<double> gammas{0.0};
    for (double g : config.sweep.gamma_grid) {
        if (g > 0.0) {
            gammas.push_back(g);
        }
    }
    struct Row {
        int n;
        DecoherencePoint p;
    };
    std::vector<Row> rows;
    manifest.stage("decoherence", [&] {
        for (int n : config.sweep.decoherence_atoms) {
            ProtocolConfig c = config.protocol;
            c.atoms = n;
            for (const auto& p : decoherence_sweep(c, gammas, config.sweep.channels, config.jobs)) {
                rows.push_back({n, p});
            }
        }
        return 0;
    });
    std::ostringstream csv;
    csv << "gamma,channel,N,T_eff_ss,mean_n_ss,std_T_eff\n";
    for (const auto& r : rows) {
        csv << fmt_num(r.p.gamma) << ',' << to_string(r.p.channel) << ',' << r.n << ','
            << fmt_num(r.p.stats.T_eff_ss) << ',' << fmt_num(r.p.stats.mean_n_ss) << ','
            << fmt_num(r.p.stats.std_T) << '\n';
    }
    manifest.write("decoherence.csv", csv.str());

    json channels = json::array();
    for (auto ch : config.sweep.channels) {
        json per_gamma = json::array();
        for (double g : gammas) {
            std::vector<ScalingPoint> pts;
            for (const auto& r : rows) {
                if (r.p.channel == ch && r.p.gamma == g) {
                    pts.push_back({static_cast<double>(r.n), r.p.stats.T_eff_ss});
                }
            }
            per_gamma.push_back(
                {{"gamma", g}, {"xi_T", pinned_quadratic_coefficient(pts, config.protocol.T_c)}});
        }
        channels.push_back({{"channel", to_string(ch)}, {"coefficients", per_gamma}});
    }
    manifest.write_json("decoherence_summary.json",
                        {{"baseline_T_c_in_omega", config.protocol.T_c},
                         {"N", config.sweep.decoherence_atoms},
                         {"channels", channels}});
}

void cmd_dicke(const RunConfig& config, RunManifest& manifest)
{
    std::vector<ProtocolConfig> dicke;
    std::vector<ProtocolConfig> reference;
    for (int n : config.dicke.atoms) {
        ProtocolConfig c = config.protocol;
        c.atoms = n;
        if (config.dicke.num_injections > 0) {
            c.num_injections = config.dicke.num_injections;
        }
        reference.push_back(c);
        c.model.hamiltonian_kind = HamiltonianKind::Dicke;
        c.model.g = config.dicke.g;
        c.n_max = config.dicke.n_max > 0 ? config.dicke.n_max : dicke_n_max(n);
        c.validate();
        dicke.push_back(c);
    }
    std::vector<ProtocolConfig> all = dicke;
    all.insert(all.end(), reference.begin(), reference.end());
    auto runs = manifest.stage("dicke", [&] { return run_all(all, config.jobs); });
    std::vector<RunOutcome> d(runs.begin(), runs.begin() + dicke.size());
    std::vector<RunOutcome> tc(runs.begin() + dicke.size(), runs.end());
    emit_trajectories(d, manifest, "dicke_");
    emit_trajectories(tc, manifest, "dicke_ref_");

    const double t_c = config.protocol.T_c;
    std::vector<ScalingPoint> pts;
    json per_n = json::array();
    for (std::size_t i = 0; i < d.size(); ++i) {
        const auto& sd = require_stats(d[i]);
        const auto& st = require_stats(tc[i]);
        pts.push_back({static_cast<double>(d[i].config.atoms), sd.T_eff_ss});
        per_n.push_back({{"N", d[i].config.atoms},
                         {"T_eff_ss_in_omega", sd.T_eff_ss},
                         {"T_eff_minus_T_c", sd.T_eff_ss - t_c},
                         {"std_T_eff_dicke", sd.std_T},
                         {"std_T_eff_tavis_cummings", st.std_T},
                         {"dicke_fluctuations_smaller", sd.std_T < st.std_T},
                         {"dicke", outcome_json(d[i])},
                         {"tavis_cummings", outcome_json(tc[i])}});
    }
    manifest.write_json("dicke_summary.json",
                        {{"g", config.dicke.g},
                         {"T_c_in_omega", t_c},
                         {"per_N", per_n},
                         {"T_eff_fit", scaling_fit_json(pts, t_c, "T_eff = T_c + xi N^p")}});
}

void cmd_cost(const RunConfig& config, const CommandOptions& opts, RunManifest& manifest)
{
    CostParams params;
    params.inv_tau_gamma = config.cost.inv_tau_gamma;
    params.divergence = config.cost.divergence;
    const int clusters = config.cost.clusters > 0 ? config.cost.clusters : config.protocol.num_injections;

    std::vector<std::pair<int, std::optional<double>>> cases;
    json source = nullptr;
    if (opts.work_output) {
        cases.emplace_back(config.protocol.atoms, *opts.work_output);
        source = "flag";
    } else {
        const auto path = manifest.out_dir() / "otto_summary.json";
        if (std::filesystem::exists(path)) {
            std::ifstream in(path);
            const json otto = json::parse(in, nullptr, false);
            if (!otto.is_discarded() && otto.contains("per_N")) {
                for (const auto& r : otto["per_N"]) {
                    cases.emplace_back(r["N"].get<int>(), r["W_max_in_omega_H"].get<double>());
                }
                source = "otto_summary.json";
            }
        }
    }
    if (cases.empty()) {
        cases.emplace_back(config.protocol.atoms, std::nullopt);
    }

    json reports = json::array();
    std::ostringstream table;
    for (const auto& [n, w] : cases) {
        const CostReport r = total_cost_report(params, n, clusters, w.value_or(0.0));
        json j = to_json(r);
        if (!w) {
            j["work_output_in_omega"] = nullptr;
        }
        reports.push_back(j);
        write_cost_table(table, r);
        table << '\n';
    }
    manifest.write_json("cost_report.json", {{"inv_tau_gamma", params.inv_tau_gamma},
                                             {"divergence", params.divergence},
                                             {"work_output_source", source},
                                             {"reports", reports}});
    manifest.write("cost_table.txt", table.str());
}

} // namespace srotto::cli
