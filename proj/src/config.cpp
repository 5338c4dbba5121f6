// config.cpp: Run configuration: JSON load/emit, defaults, grid parsing

#include "srotto/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "srotto/errors.hpp"

namespace srotto {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& path, const std::string& msg)
{
    fail(ErrorKind::Config, path + ": " + msg);
}

// Reads keys from one JSON object and rejects any it did not consume.
class Section {
public:
    Section(const json& j, std::string path) : j_(j), path_(std::move(path))
    {
        if (!j_.is_object()) {
            bad(path_.empty() ? "<root>" : path_, "expected an object");
        }
    }

    std::string child(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

    const json* find(const std::string& key)
    {
        seen_.insert(key);
        auto it = j_.find(key);
        return it == j_.end() ? nullptr : &*it;
    }

    void get(const std::string& key, double& dst)
    {
        if (const json* v = find(key)) {
            dst = as_real(*v, child(key));
        }
    }

    void get(const std::string& key, int& dst)
    {
        if (const json* v = find(key)) {
            dst = as_int(*v, child(key));
        }
    }

    void get(const std::string& key, long& dst)
    {
        if (const json* v = find(key)) {
            dst = as_int(*v, child(key));
        }
    }

    void get(const std::string& key, std::string& dst)
    {
        if (const json* v = find(key)) {
            if (!v->is_string()) {
                bad(child(key), "expected a string");
            }
            dst = v->get<std::string>();
        }
    }

    void get(const std::string& key, std::vector<double>& dst)
    {
        if (const json* v = find(key)) {
            const std::string p = child(key);
            if (v->is_string()) {
                dst = parse_real_grid(v->get<std::string>(), p);
                return;
            }
            if (v->is_object()) {
                Section s(*v, p);
                double start = 0.0, stop = 0.0;
                int count = 0;
                s.get("start", start);
                s.get("stop", stop);
                s.get("count", count);
                s.finish();
                std::ostringstream os;
                os << start << ':' << stop << ':' << count;
                dst = parse_real_grid(os.str(), p);
                return;
            }
            if (!v->is_array()) {
                bad(p, "expected a list of numbers");
            }
            dst.clear();
            for (std::size_t i = 0; i < v->size(); ++i) {
                dst.push_back(as_real((*v)[i], p + "[" + std::to_string(i) + "]"));
            }
        }
    }

    void get(const std::string& key, std::vector<int>& dst)
    {
        if (const json* v = find(key)) {
            const std::string p = child(key);
            if (v->is_string()) {
                dst = parse_int_list(v->get<std::string>(), p);
                return;
            }
            if (!v->is_array()) {
                bad(p, "expected a list of integers");
            }
            dst.clear();
            for (std::size_t i = 0; i < v->size(); ++i) {
                dst.push_back(as_int((*v)[i], p + "[" + std::to_string(i) + "]"));
            }
        }
    }

    template <class Enum, class Parse>
    void get_enum(const std::string& key, Enum& dst, Parse parse)
    {
        if (const json* v = find(key)) {
            if (!v->is_string()) {
                bad(child(key), "expected a string");
            }
            try {
                dst = parse(v->get<std::string>());
            } catch (const Error& e) {
                bad(child(key), e.what());
            }
        }
    }

    void finish() const
    {
        for (auto it = j_.begin(); it != j_.end(); ++it) {
            if (!seen_.count(it.key())) {
                bad(child(it.key()), "unknown key");
            }
        }
    }

    static double as_real(const json& v, const std::string& path)
    {
        if (!v.is_number()) {
            bad(path, "expected a number");
        }
        const double d = v.get<double>();
        if (!std::isfinite(d)) {
            bad(path, "must be finite");
        }
        return d;
    }

    static long as_int(const json& v, const std::string& path)
    {
        if (v.is_number_integer()) {
            return v.get<long>();
        }
        if (v.is_number_float()) {
            const double d = v.get<double>();
            if (std::isfinite(d) && d == std::floor(d) && std::abs(d) < 9e15) {
                return static_cast<long>(d);
            }
        }
        bad(path, "expected an integer");
    }

private:
    const json& j_;
    std::string path_;
    std::set<std::string> seen_;
};

const char* to_string(WorkCurveMode m)
{
    return m == WorkCurveMode::PhotonNumber ? "photon_number" : "thermal_distributions";
}

WorkCurveMode parse_work_mode(const std::string& s)
{
    if (s == "photon_number") {
        return WorkCurveMode::PhotonNumber;
    }
    if (s == "thermal_distributions") {
        return WorkCurveMode::ThermalDistributions;
    }
    fail(ErrorKind::Config, "unknown work mode '" + s + "'");
}

} // namespace

std::vector<double> default_omega_L_grid()
{
    std::vector<double> grid;
    for (int k = 1; k <= 99; ++k) {
        grid.push_back(k / 100.0);
    }
    return grid;
}

int dicke_n_max(int atoms)
{
    return 25 + 4 * atoms * atoms;
}

RunConfig::RunConfig()
{
    otto.omega_L_grid = default_omega_L_grid();
}

std::vector<double> parse_real_grid(const std::string& text, const std::string& field)
{
    std::vector<double> out;
    auto number = [&](const std::string& tok) {
        std::size_t pos = 0;
        double v = 0.0;
        try {
            v = std::stod(tok, &pos);
        } catch (const std::exception&) {
            bad(field, "cannot parse '" + tok + "' as a number");
        }
        if (pos != tok.size() || !std::isfinite(v)) {
            bad(field, "cannot parse '" + tok + "' as a number");
        }
        return v;
    };
    if (text.find(':') != std::string::npos) {
        std::vector<std::string> parts;
        std::stringstream ss(text);
        std::string tok;
        while (std::getline(ss, tok, ':')) {
            parts.push_back(tok);
        }
        if (parts.size() != 3) {
            bad(field, "range form is start:stop:count");
        }
        const double a = number(parts[0]);
        const double b = number(parts[1]);
        const double c = number(parts[2]);
        if (c < 1 || c != std::floor(c)) {
            bad(field, "range count must be a positive integer");
        }
        const int n = static_cast<int>(c);
        for (int k = 0; k < n; ++k) {
            out.push_back(n == 1 ? a : a + (b - a) * k / (n - 1));
        }
        return out;
    }
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (!tok.empty()) {
            out.push_back(number(tok));
        }
    }
    if (out.empty()) {
        bad(field, "empty list");
    }
    return out;
}

std::vector<int> parse_int_list(const std::string& text, const std::string& field)
{
    std::vector<int> out;
    for (double v : parse_real_grid(text, field)) {
        if (v != std::floor(v)) {
            bad(field, "expected integers");
        }
        out.push_back(static_cast<int>(v));
    }
    return out;
}

void RunConfig::validate() const
{
    try {
        protocol.validate();
    } catch (const Error& e) {
        throw Error(ErrorKind::Config, e.what());
    }
    require(jobs >= 1, ErrorKind::Config, "jobs must be >= 1");
    require(!output_dir.empty(), ErrorKind::Config, "output_dir must not be empty");
    require(otto.omega_H > 0.0, ErrorKind::Config, "otto.omega_H must be > 0");
    require(!otto.omega_L_grid.empty(), ErrorKind::Config, "otto.omega_L_grid must not be empty");
    for (double w : otto.omega_L_grid) {
        require(w > 0.0 && w < otto.omega_H, ErrorKind::Config,
                "otto.omega_L_grid values must lie in (0, omega_H)");
    }
    require(otto.omega_L_max_work > 0.0 && otto.omega_L_max_work < otto.omega_H, ErrorKind::Config,
            "otto.omega_L_max_work must lie in (0, omega_H)");
    for (int n : sweep.atoms) {
        require(n >= 1, ErrorKind::Config, "sweep.N entries must be >= 1");
    }
    for (int n : sweep.decoherence_atoms) {
        require(n >= 1, ErrorKind::Config, "sweep.decoherence_N entries must be >= 1");
    }
    for (double g : sweep.g_grid) {
        require(g > 0.0, ErrorKind::Config, "sweep.g entries must be > 0");
    }
    for (double k : sweep.kappa_grid) {
        require(k > 0.0, ErrorKind::Config, "sweep.kappa entries must be > 0");
    }
    for (double g : sweep.gamma_grid) {
        require(g >= 0.0, ErrorKind::Config, "sweep.gamma entries must be >= 0");
    }
    require(dicke.g > 0.0, ErrorKind::Config, "dicke.g must be > 0");
    require(dicke.n_max >= 0, ErrorKind::Config, "dicke.n_max must be >= 0");
    require(dicke.num_injections >= 0, ErrorKind::Config, "dicke.num_injections must be >= 0");
    for (int n : dicke.atoms) {
        require(n >= 1, ErrorKind::Config, "dicke.N entries must be >= 1");
    }
    require(cost.inv_tau_gamma >= 0.0, ErrorKind::Config, "cost.inv_tau_gamma must be >= 0");
    require(cost.divergence > 0.0 && cost.divergence <= 1.0, ErrorKind::Config,
            "cost.divergence must lie in (0, 1]");
    require(cost.clusters >= 0, ErrorKind::Config, "cost.clusters must be >= 0");
}

RunConfig config_from_json(const json& j)
{
    RunConfig c;
    Section root(j, "");
    ProtocolConfig& p = c.protocol;
    SystemModel& m = p.model;

    if (const json* v = root.find("physics")) {
        Section s(*v, "physics");
        s.get("omega_f", m.omega_f);
        s.get("omega_a", m.omega_a);
        s.get("g", m.g);
        s.get("kappa", m.kappa);
        s.get_enum("hamiltonian", m.hamiltonian_kind, parse_hamiltonian_kind);
        s.get_enum("representation", m.representation, parse_representation);
        if (const json* d = s.find("atomic_dissipators")) {
            if (!d->is_array()) {
                bad("physics.atomic_dissipators", "expected a list");
            }
            m.atomic_dissipators.clear();
            for (std::size_t i = 0; i < d->size(); ++i) {
                Section e((*d)[i], "physics.atomic_dissipators[" + std::to_string(i) + "]");
                DissipatorSpec spec;
                e.get_enum("channel", spec.channel, parse_channel);
                e.get("gamma", spec.gamma);
                e.finish();
                m.atomic_dissipators.push_back(spec);
            }
        }
        s.finish();
    }
    if (const json* v = root.find("protocol")) {
        Section s(*v, "protocol");
        s.get("N", p.atoms);
        s.get("num_injections", p.num_injections);
        s.get("t_int", p.t_int);
        s.get("period", p.period);
        s.get("T_h", p.T_h);
        s.get("T_c", p.T_c);
        s.get("n_max", p.n_max);
        s.get("samples_per_cycle", p.samples_per_cycle);
        s.get("burn_in", p.burn_in_fraction);
        if (const json* r = s.find("rotation")) {
            Section rs(*r, "protocol.rotation");
            rs.get("phi", p.rotation.phi);
            rs.get("varphi", p.rotation.varphi);
            rs.finish();
        }
        s.finish();
    }
    if (const json* v = root.find("integrator")) {
        Section s(*v, "integrator");
        s.get("rel_tol", p.integrator.rel_tol);
        s.get("abs_tol", p.integrator.abs_tol);
        s.get("max_step", p.integrator.max_step);
        s.get("guard_every", p.integrator.guard_every);
        s.get("initial_step", p.integrator.initial_step);
        s.get("max_steps", p.integrator.max_steps);
        s.finish();
    }
    if (const json* v = root.find("otto")) {
        Section s(*v, "otto");
        s.get("omega_H", c.otto.omega_H);
        s.get("omega_L_grid", c.otto.omega_L_grid);
        s.get_enum("work_mode", c.otto.mode, parse_work_mode);
        s.get("omega_L_max_work", c.otto.omega_L_max_work);
        s.finish();
    }
    if (const json* v = root.find("sweep")) {
        Section s(*v, "sweep");
        s.get("N", c.sweep.atoms);
        s.get("g", c.sweep.g_grid);
        s.get("kappa", c.sweep.kappa_grid);
        s.get("gamma", c.sweep.gamma_grid);
        s.get("decoherence_N", c.sweep.decoherence_atoms);
        if (const json* ch = s.find("channels")) {
            if (!ch->is_array()) {
                bad("sweep.channels", "expected a list of channel names");
            }
            c.sweep.channels.clear();
            for (std::size_t i = 0; i < ch->size(); ++i) {
                const std::string path = "sweep.channels[" + std::to_string(i) + "]";
                if (!(*ch)[i].is_string()) {
                    bad(path, "expected a string");
                }
                try {
                    c.sweep.channels.push_back(parse_channel((*ch)[i].get<std::string>()));
                } catch (const Error& e) {
                    bad(path, e.what());
                }
            }
        }
        s.finish();
    }
    if (const json* v = root.find("dicke")) {
        Section s(*v, "dicke");
        s.get("g", c.dicke.g);
        s.get("N", c.dicke.atoms);
        s.get("n_max", c.dicke.n_max);
        s.get("num_injections", c.dicke.num_injections);
        s.finish();
    }
    if (const json* v = root.find("cost")) {
        Section s(*v, "cost");
        s.get("inv_tau_gamma", c.cost.inv_tau_gamma);
        s.get("divergence", c.cost.divergence);
        s.get("clusters", c.cost.clusters);
        s.finish();
    }
    root.get("output_dir", c.output_dir);
    root.get("jobs", c.jobs);
    root.finish();
    c.validate();
    return c;
}

json config_to_json(const RunConfig& c)
{
    const ProtocolConfig& p = c.protocol;
    const SystemModel& m = p.model;
    json dissipators = json::array();
    for (const auto& d : m.atomic_dissipators) {
        dissipators.push_back({{"channel", to_string(d.channel)}, {"gamma", d.gamma}});
    }
    json channels = json::array();
    for (auto ch : c.sweep.channels) {
        channels.push_back(to_string(ch));
    }
    return {
        {"physics",
         {{"omega_f", m.omega_f},
          {"omega_a", m.omega_a},
          {"g", m.g},
          {"kappa", m.kappa},
          {"hamiltonian", to_string(m.hamiltonian_kind)},
          {"representation", to_string(m.representation)},
          {"atomic_dissipators", dissipators}}},
        {"protocol",
         {{"N", p.atoms},
          {"num_injections", p.num_injections},
          {"t_int", p.t_int},
          {"period", p.period},
          {"T_h", p.T_h},
          {"T_c", p.T_c},
          {"n_max", p.n_max},
          {"samples_per_cycle", p.samples_per_cycle},
          {"burn_in", p.burn_in_fraction},
          {"rotation", {{"phi", p.rotation.phi}, {"varphi", p.rotation.varphi}}}}},
        {"integrator",
         {{"rel_tol", p.integrator.rel_tol},
          {"abs_tol", p.integrator.abs_tol},
          {"max_step", p.integrator.max_step},
          {"guard_every", p.integrator.guard_every},
          {"initial_step", p.integrator.initial_step},
          {"max_steps", p.integrator.max_steps}}},
        {"otto",
         {{"omega_H", c.otto.omega_H},
          {"omega_L_grid", c.otto.omega_L_grid},
          {"work_mode", to_string(c.otto.mode)},
          {"omega_L_max_work", c.otto.omega_L_max_work}}},
        {"sweep",
         {{"N", c.sweep.atoms},
          {"g", c.sweep.g_grid},
          {"kappa", c.sweep.kappa_grid},
          {"gamma", c.sweep.gamma_grid},
          {"channels", channels},
          {"decoherence_N", c.sweep.decoherence_atoms}}},
        {"dicke",
         {{"g", c.dicke.g},
          {"N", c.dicke.atoms},
          {"n_max", c.dicke.n_max},
          {"num_injections", c.dicke.num_injections}}},
        {"cost",
         {{"inv_tau_gamma", c.cost.inv_tau_gamma},
          {"divergence", c.cost.divergence},
          {"clusters", c.cost.clusters}}},
        {"output_dir", c.output_dir},
        {"jobs", c.jobs},
    };
}

RunConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        fail(ErrorKind::Config, "cannot open config file '" + path + "'");
    }
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        fail(ErrorKind::Config, "config file '" + path + "' is not valid JSON: " + e.what());
    }
    return config_from_json(j);
}

} // namespace srotto
