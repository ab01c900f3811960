#include "otfs/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace otfs {

using nlohmann::json;

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

namespace {

ChannelProfile make_profile(LinkId link, double omega, const std::vector<int>& doppler,
                            const std::vector<int>& delay) {
    if (doppler.size() != delay.size()) {
        throw ConfigError(std::string("links.") + link_name(link) +
                          ": doppler_taps and delay_taps must have the same length");
    }
    ChannelProfile p;
    p.link = link;
    p.omega_total = omega;
    p.paths.reserve(doppler.size());
    for (std::size_t i = 0; i < doppler.size(); ++i) {
        p.paths.push_back(PathTap{doppler[i], delay[i]});
    }
    return p;
}

const json* find(const json& obj, const char* key) {
    const auto it = obj.find(key);
    return it == obj.end() ? nullptr : &*it;
}

template <typename T>
void read_into(const json& obj, const char* key, T& out, const std::string& path) {
    if (const json* v = find(obj, key)) {
        try {
            out = v->get<T>();
        } catch (const json::exception& e) {
            throw ConfigError("config field '" + path + "." + key + "': " + e.what());
        }
    }
}

void read_profile(const json& links, const char* key, ChannelProfile& out) {
    const json* node = find(links, key);
    if (node == nullptr) {
        return;
    }
    double omega = out.omega_total;
    std::vector<int> doppler;
    std::vector<int> delay;
    for (const PathTap& tap : out.paths) {
        doppler.push_back(tap.doppler);
        delay.push_back(tap.delay);
    }
    const std::string path = std::string("links.") + key;
    read_into(*node, "omega", omega, path);
    read_into(*node, "doppler_taps", doppler, path);
    read_into(*node, "delay_taps", delay, path);
    out = make_profile(out.link, omega, doppler, delay);
}

Scheme parse_scheme(const std::string& name, const std::string& path) {
    if (name == "proposed") return Scheme::proposed;
    if (name == "oma") return Scheme::oma;
    if (name == "ncdrt") return Scheme::ncdrt;
    throw ConfigError("config field '" + path + "': unknown scheme '" + name +
                      "' (expected proposed, oma, or ncdrt)");
}

std::pair<int, int> line_column(const std::string& text, std::size_t byte) {
    int line = 1;
    int col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

} // namespace

SweepConfig default_sweep_config() {
    SweepConfig cfg;
    cfg.scenario.frame = FrameParams{32, 16, 3750.0, 4.0e9};
    cfg.scenario.alloc = PowerAllocation{0.1, 0.9};
    cfg.scenario.rates = RateTargets{1.8, 1.0, 1.0};
    const std::vector<int> k{0, 1, 2};
    const std::vector<int> l{0, 2, 3};
    cfg.scenario.sc_t1 = make_profile(LinkId::sc_t1, 1.0, k, l);
    cfg.scenario.sr_t1 = make_profile(LinkId::sr_t1, 0.5, k, l);
    cfg.scenario.sc_t2 = make_profile(LinkId::sc_t2, 1.0, k, l);
    cfg.scenario.rc_t2 = make_profile(LinkId::rc_t2, 1.0, k, l);
    cfg.scenario.re_t2 = make_profile(LinkId::re_t2, 1.0, k, l);
    cfg.scenario.rho_s = 1.0;
    cfg.scenario.rho_r = 0.5;
    for (int db = 0; db <= 40; db += 2) {
        cfg.snr_grid_db.push_back(db);
    }
    cfg.schemes = {Scheme::proposed, Scheme::oma, Scheme::ncdrt};
    return cfg;
}

SweepConfig parse_sweep_config(const std::string& text, const std::string& origin) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        const auto [line, col] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
        std::ostringstream msg;
        msg << origin << ":" << line << ":" << col << ": " << e.what();
        throw ConfigError(msg.str());
    }
    if (!root.is_object()) {
        throw ConfigError(origin + ": top-level value must be an object");
    }

    SweepConfig cfg = default_sweep_config();
    try {
        if (const json* frame = find(root, "frame")) {
            read_into(*frame, "M", cfg.scenario.frame.M, "frame");
            read_into(*frame, "N", cfg.scenario.frame.N, "frame");
            read_into(*frame, "delta_f_hz", cfg.scenario.frame.delta_f_hz, "frame");
            read_into(*frame, "carrier_hz", cfg.scenario.frame.carrier_hz, "frame");
        }
        if (const json* power = find(root, "power")) {
            double ac = cfg.scenario.alloc.alpha_c;
            double ae = cfg.scenario.alloc.alpha_e;
            read_into(*power, "alpha_c", ac, "power");
            read_into(*power, "alpha_e", ae, "power");
            cfg.scenario.alloc = PowerAllocation{ac, ae};
        }
        if (const json* rates = find(root, "rates")) {
            read_into(*rates, "r_xc", cfg.scenario.rates.r_xc, "rates");
            read_into(*rates, "r_xe", cfg.scenario.rates.r_xe, "rates");
            read_into(*rates, "r_xbarc", cfg.scenario.rates.r_xbarc, "rates");
        }
        if (const json* links = find(root, "links")) {
            read_profile(*links, "sc_t1", cfg.scenario.sc_t1);
            read_profile(*links, "sr_t1", cfg.scenario.sr_t1);
            read_profile(*links, "sc_t2", cfg.scenario.sc_t2);
            read_profile(*links, "rc_t2", cfg.scenario.rc_t2);
            read_profile(*links, "re_t2", cfg.scenario.re_t2);
        }
        if (const json* snr = find(root, "snr")) {
            read_into(*snr, "grid_db", cfg.snr_grid_db, "snr");
            read_into(*snr, "pr_over_ps", cfg.pr_over_ps, "snr");
        }
        if (const json* mc = find(root, "mc")) {
            read_into(*mc, "trials", cfg.mc.trials, "mc");
            read_into(*mc, "master_seed", cfg.mc.master_seed, "mc");
            read_into(*mc, "parallelism", cfg.mc.parallelism, "mc");
        }
        if (const json* schemes = find(root, "schemes")) {
            if (!schemes->is_array() || schemes->empty()) {
                throw ConfigError("config field 'schemes': must be a nonempty array");
            }
            cfg.schemes.clear();
            for (const json& s : *schemes) {
                cfg.schemes.push_back(parse_scheme(s.get<std::string>(), "schemes"));
            }
        }
        read_into(root, "strict_eq19", cfg.scenario.strict_eq19, "");
        if (const json* payload = find(root, "payload")) {
            const std::string name = payload->get<std::string>();
            if (name == "qpsk") {
                cfg.scenario.payload = Payload::qpsk;
            } else if (name == "gaussian") {
                cfg.scenario.payload = Payload::gaussian;
            } else {
                throw ConfigError("config field 'payload': expected qpsk or gaussian");
            }
        }
    } catch (const json::exception& e) {
        throw ConfigError(origin + ": " + e.what());
    }

    if (cfg.snr_grid_db.empty()) {
        throw ConfigError(origin + ": snr.grid_db must be nonempty");
    }
    if (!(cfg.pr_over_ps > 0.0)) {
        throw ConfigError(origin + ": snr.pr_over_ps must be positive");
    }
    if (cfg.mc.trials < 1) {
        throw ConfigError(origin + ": mc.trials must be >= 1");
    }
    // surface scenario-level problems (tap ranges, power ordering) at load time
    Scenario probe = scenario_at(cfg, cfg.snr_grid_db.front(), Scheme::proposed);
    check_scenario(probe);
    return cfg;
}

SweepConfig load_sweep_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_sweep_config(buf.str(), path);
}

Scenario scenario_at(const SweepConfig& cfg, double snr_db, Scheme scheme) {
    Scenario s = cfg.scenario;
    s.rho_s = db_to_linear(snr_db);
    s.rho_r = s.rho_s * cfg.pr_over_ps;
    s.scheme = scheme;
    return s;
}

} // namespace otfs
