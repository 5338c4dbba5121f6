// main.cpp: srotto command-line entry point

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "commands.hpp"
#include "srotto/config.hpp"
#include "srotto/errors.hpp"

using namespace srotto;
using nlohmann::json;

namespace {

int report_error(const std::string& kind, const std::string& message, int code)
{
    std::cerr << json{{"error", {{"kind", kind}, {"message", message}, {"exit_code", code}}}}.dump()
              << std::endl;
    return code;
}

struct Overrides {
    std::string config_path;
    std::optional<std::string> output_dir;
    std::optional<int> jobs;
    std::optional<double> g;
    std::optional<double> kappa;
    std::optional<std::string> atoms;
    std::optional<std::string> omega_l_grid;
    std::optional<std::string> gamma_grid;
    std::optional<int> num_injections;
    std::optional<int> n_max;
    std::optional<double> t_int;
    std::optional<double> period;
    std::optional<double> burn_in;
    std::optional<double> work_output;
    bool print_config = false;
};

void add_common(CLI::App* sub, Overrides& o)
{
    sub->add_option("--config", o.config_path, "JSON configuration file");
    sub->add_option("--output-dir", o.output_dir, "Directory for output files");
    sub->add_option("--jobs", o.jobs, "Worker threads for independent runs");
    sub->add_option("--g", o.g, "Atom-field coupling");
    sub->add_option("--kappa", o.kappa, "Cavity damping rate");
    sub->add_option("--N", o.atoms, "Atom counts, e.g. 2,3,4 or 2:6:5");
    sub->add_option("--omega-L-grid", o.omega_l_grid, "omega_L values, list or start:stop:count");
    sub->add_option("--gamma-grid", o.gamma_grid, "Atomic decoherence rates, list or start:stop:count");
    sub->add_option("--num-injections", o.num_injections, "Clusters injected per run");
    sub->add_option("--n-max", o.n_max, "Fock truncation");
    sub->add_option("--t-int", o.t_int, "Interaction time per cluster");
    sub->add_option("--period", o.period, "Injection period");
    sub->add_option("--burn-in", o.burn_in, "Fraction of cycles dropped before averaging");
    sub->add_flag("--print-config", o.print_config, "Print the resolved configuration and exit");
}

RunConfig resolve(const std::string& command, const Overrides& o, cli::CommandOptions& opts)
{
    RunConfig c = o.config_path.empty() ? RunConfig{} : load_config(o.config_path);
    ProtocolConfig& p = c.protocol;
    if (o.output_dir) {
        c.output_dir = *o.output_dir;
    }
    if (o.jobs) {
        c.jobs = *o.jobs;
    }
    if (o.g) {
        (command == "dicke" ? c.dicke.g : p.model.g) = *o.g;
    }
    if (o.kappa) {
        p.model.kappa = *o.kappa;
    }
    if (o.atoms) {
        const auto atoms = parse_int_list(*o.atoms, "--N");
        p.atoms = atoms.front();
        if (command == "ignition") {
            opts.atoms = atoms;
        } else if (command == "scaling" || command == "otto") {
            c.sweep.atoms = atoms;
        } else if (command == "decoherence") {
            c.sweep.decoherence_atoms = atoms;
        } else if (command == "dicke") {
            c.dicke.atoms = atoms;
        }
    }
    if (o.omega_l_grid) {
        c.otto.omega_L_grid = parse_real_grid(*o.omega_l_grid, "--omega-L-grid");
    }
    if (o.gamma_grid) {
        c.sweep.gamma_grid = parse_real_grid(*o.gamma_grid, "--gamma-grid");
    }
    if (o.num_injections) {
        p.num_injections = *o.num_injections;
        c.dicke.num_injections = 0;
    }
    if (o.n_max) {
        p.n_max = *o.n_max;
        c.dicke.n_max = *o.n_max;
    }
    if (o.t_int) {
        p.t_int = *o.t_int;
    }
    if (o.period) {
        p.period = *o.period;
    }
    if (o.burn_in) {
        p.burn_in_fraction = *o.burn_in;
    }
    opts.work_output = o.work_output;
    c.validate();
    return c;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Superradiant photonic quantum Otto engine simulator"};
    app.set_version_flag("--version", std::string(SROTTO_VERSION));
    app.require_subcommand(1);

    Overrides o;
    const char* names[][2] = {
        {"ignition", "Cavity thermalization by repeated cluster injection"},
        {"scaling", "Steady state against N with quadratic fits"},
        {"otto", "Work output curves W(omega_L) and W_max(N)"},
        {"decoherence", "Steady temperature under atomic decoherence"},
        {"dicke", "Ignition with counter-rotating terms"},
        {"cost", "Energy cost of cluster coherence"},
    };
    for (const auto& [name, help] : names) {
        CLI::App* sub = app.add_subcommand(name, help);
        add_common(sub, o);
        if (std::string(name) == "cost") {
            sub->add_option("--work-output", o.work_output, "Engine work output in units of omega_H");
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return report_error("config", e.what(), 2);
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        cli::CommandOptions opts;
        const RunConfig config = resolve(command, o, opts);
        if (o.print_config) {
            std::cout << config_to_json(config).dump(2) << std::endl;
            return 0;
        }
        cli::RunManifest manifest(command, config_to_json(config), config.output_dir);
        if (command == "ignition") {
            cli::cmd_ignition(config, opts, manifest);
        } else if (command == "scaling") {
            cli::cmd_scaling(config, manifest);
        } else if (command == "otto") {
            cli::cmd_otto(config, manifest);
        } else if (command == "decoherence") {
            cli::cmd_decoherence(config, manifest);
        } else if (command == "dicke") {
            cli::cmd_dicke(config, manifest);
        } else {
            cli::cmd_cost(config, opts, manifest);
        }
        const std::string name = manifest.finish();
        std::cout << json{{"command", command},
                          {"output_dir", config.output_dir},
                          {"manifest", name},
                          {"files", manifest.files().size()}}
                         .dump()
                  << std::endl;
    } catch (const Error& e) {
        return report_error(to_string(e.kind()), e.what(), exit_code(e.kind()));
    } catch (const json::exception& e) {
        return report_error("config", e.what(), 2);
    } catch (const std::exception& e) {
        return report_error("internal", e.what(), 1);
    }
    return 0;
}
