// config.hpp: Run configuration: JSON load/emit, defaults, grid parsing

#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "srotto/cost.hpp"
#include "srotto/injection.hpp"
#include "srotto/otto.hpp"

namespace srotto {

struct OttoSettings {
    double omega_H = 1.0;
    std::vector<double> omega_L_grid; // defaults to 0.01..0.99 in steps of 0.01
    WorkCurveMode mode = WorkCurveMode::PhotonNumber;
    double omega_L_max_work = 0.01; // where W_max(N) is read off
};

struct SweepSettings {
    std::vector<int> atoms{2, 3, 4, 5, 6};
    std::vector<double> g_grid{0.1, 0.15, 0.19, 0.25, 0.3};
    std::vector<double> kappa_grid{0.01, 0.02, 0.03, 0.05, 0.1};
    std::vector<double> gamma_grid{0.03, 0.09, 0.18};
    std::vector<DissipatorChannel> channels{DissipatorChannel::CollectiveLowering,
                                            DissipatorChannel::CollectiveDephasing};
    std::vector<int> decoherence_atoms{2, 3};
};

struct DickeSettings {
    double g = 0.36;
    std::vector<int> atoms{2, 3, 4};
    int n_max = 0; // 0 picks a size from N
    int num_injections = 0; // 0 keeps protocol.num_injections
};

struct CostSettings {
    double inv_tau_gamma = 2.0;
    double divergence = 0.5;
    int clusters = 0; // 0 uses protocol.num_injections
};

struct RunConfig {
    ProtocolConfig protocol; // includes physics model and integrator settings
    OttoSettings otto;
    SweepSettings sweep;
    DickeSettings dicke;
    CostSettings cost;
    std::string output_dir = "out";
    int jobs = 1;

    RunConfig();
    // Throws Error(Config) naming the offending field path.
    void validate() const;
};

// Unknown keys and type mismatches are Config errors carrying the field path.
RunConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const RunConfig& c);
RunConfig load_config(const std::string& path);

// "a,b,c" or "start:stop:count" (inclusive, evenly spaced).
std::vector<double> parse_real_grid(const std::string& text, const std::string& field);
std::vector<int> parse_int_list(const std::string& text, const std::string& field);

std::vector<double> default_omega_L_grid();
int dicke_n_max(int atoms);

} // namespace srotto
