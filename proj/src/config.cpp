#include "config.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace shockwave {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

double parse_double(const std::string& v, const std::string& key, const std::string& where) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("");
        return x;
    } catch (...) {
        throw ConfigError(where + ": value '" + v + "' for " + key + " is not a number");
    }
}

int parse_int(const std::string& v, const std::string& key, const std::string& where) {
    try {
        std::size_t pos = 0;
        const int x = std::stoi(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("");
        return x;
    } catch (...) {
        throw ConfigError(where + ": value '" + v + "' for " + key + " is not an integer");
    }
}

std::vector<std::string> split_commas(const std::string& v) {
    std::vector<std::string> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

}  // namespace

void apply_assignment(RunConfig& cfg, const std::string& key, const std::string& value,
                      const std::string& where) {
    if (key == "params.delta") {
        cfg.delta = parse_double(value, key, where);
    } else if (key == "params.eps0") {
        cfg.eps0 = parse_double(value, key, where);
    } else if (key == "params.p") {
        cfg.p = parse_int(value, key, where);
    } else if (key == "profile.kind") {
        cfg.profile_kind = value;
    } else if (key == "profile.amplitude") {
        cfg.profile_amplitude = parse_double(value, key, where);
    } else if (key == "profile.margin") {
        cfg.profile_margin = parse_double(value, key, where);
    } else if (key == "grid.r_min") {
        cfg.r_min = parse_double(value, key, where);
    } else if (key == "grid.r_max") {
        cfg.r_max = parse_double(value, key, where);
    } else if (key == "grid.points_per_pulse") {
        cfg.points_per_pulse = parse_int(value, key, where);
    } else if (key == "time.cfl") {
        cfg.cfl = parse_double(value, key, where);
    } else if (key == "time.t_max") {
        cfg.t_max = parse_double(value, key, where);
    } else if (key == "fan.count") {
        cfg.fan_count = parse_int(value, key, where);
    } else if (key == "detect.mu_stop") {
        cfg.mu_stop = parse_double(value, key, where);
    } else if (key == "detect.d2_cap") {
        cfg.d2_cap = parse_double(value, key, where);
    } else if (key == "output.dir") {
        cfg.output_dir = value;
    } else if (key == "sweep.delta") {
        cfg.sweep_delta.clear();
        for (const std::string& item : split_commas(value)) {
            cfg.sweep_delta.push_back(parse_double(item, key, where));
        }
    } else if (key == "sweep.p") {
        cfg.sweep_p.clear();
        for (const std::string& item : split_commas(value)) {
            cfg.sweep_p.push_back(parse_int(item, key, where));
        }
    } else {
        throw ConfigError(where + ": unknown key '" + key + "'");
    }
}

RunConfig load_config(const std::string& path, const std::vector<std::string>& overrides) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file: " + path);
    }

    RunConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        const std::string where = path + ":" + std::to_string(lineno);
        if (eq == std::string::npos) {
            throw ConfigError(where + ": expected 'key = value'");
        }
        apply_assignment(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)), where);
    }

    for (const std::string& ov : overrides) {
        const std::size_t eq = ov.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("override '" + ov + "': expected key=value");
        }
        apply_assignment(cfg, trim(ov.substr(0, eq)), trim(ov.substr(eq + 1)),
                         "override '" + ov + "'");
    }

    cfg.validate();
    return cfg;
}

void RunConfig::validate() const {
    if (!(delta > 0.0 && delta <= 0.5)) {
        throw ConfigError("params.delta must be in (0, 0.5]");
    }
    if (!(eps0 > 0.0 && eps0 < 1.0)) {
        throw ConfigError("params.eps0 must be in (0, 1)");
    }
    if (p < 1) {
        throw ConfigError("params.p must be an integer >= 1");
    }
    if (profile_kind != "standard_bump") {
        throw ConfigError("profile.kind must be 'standard_bump' (tabulated profiles have no file source)");
    }
    if (profile_amplitude && profile_margin) {
        throw ConfigError("profile.amplitude and profile.margin are mutually exclusive");
    }
    if (profile_amplitude && !(*profile_amplitude >= 0.0)) {
        throw ConfigError("profile.amplitude must be >= 0");
    }
    if (profile_margin && !(*profile_margin > 0.0)) {
        throw ConfigError("profile.margin must be > 0");
    }
    const PulseParams probe{delta, eps0, p, 1.0};
    if (probe.supercritical() && !profile_amplitude) {
        throw ConfigError("profile.amplitude is required when p > p_c (no shock threshold to tune against)");
    }
    if (!(r_min > 0.0 && r_min < 1.0 - delta)) {
        throw ConfigError("grid.r_min must be in (0, 1-delta)");
    }
    if (!(r_max > 1.0)) {
        throw ConfigError("grid.r_max must be > 1");
    }
    if (points_per_pulse < 4) {
        throw ConfigError("grid.points_per_pulse must be >= 4");
    }
    if (!(cfl > 0.0 && cfl < 1.0)) {
        throw ConfigError("time.cfl must be in (0,1)");
    }
    if (!(t_max > 1.0)) {
        throw ConfigError("time.t_max must be > 1");
    }
    if (fan_count < 8) {
        throw ConfigError("fan.count must be >= 8");
    }
    if (!(mu_stop > 0.0 && mu_stop < 0.5)) {
        throw ConfigError("detect.mu_stop must be in (0, 0.5)");
    }
    if (d2_cap && !(*d2_cap > 0.0)) {
        throw ConfigError("detect.d2_cap must be > 0");
    }
    for (double d : sweep_delta) {
        if (!(d > 0.0 && d <= 0.5)) {
            throw ConfigError("sweep.delta entries must be in (0, 0.5]");
        }
    }
    for (int sp : sweep_p) {
        if (sp < 1) {
            throw ConfigError("sweep.p entries must be integers >= 1");
        }
    }
}

std::string render_config(const RunConfig& cfg) {
    std::ostringstream os;
    os << "params.delta = " << fmt17(cfg.delta) << "\n";
    os << "params.eps0 = " << fmt17(cfg.eps0) << "\n";
    os << "params.p = " << cfg.p << "\n";
    os << "profile.kind = " << cfg.profile_kind << "\n";
    if (cfg.profile_amplitude) os << "profile.amplitude = " << fmt17(*cfg.profile_amplitude) << "\n";
    if (cfg.profile_margin) os << "profile.margin = " << fmt17(*cfg.profile_margin) << "\n";
    os << "grid.r_min = " << fmt17(cfg.r_min) << "\n";
    os << "grid.r_max = " << fmt17(cfg.r_max) << "\n";
    os << "grid.points_per_pulse = " << cfg.points_per_pulse << "\n";
    os << "time.cfl = " << fmt17(cfg.cfl) << "\n";
    os << "time.t_max = " << fmt17(cfg.t_max) << "\n";
    os << "fan.count = " << cfg.fan_count << "\n";
    os << "detect.mu_stop = " << fmt17(cfg.mu_stop) << "\n";
    if (cfg.d2_cap) os << "detect.d2_cap = " << fmt17(*cfg.d2_cap) << "\n";
    os << "output.dir = " << cfg.output_dir << "\n";
    if (!cfg.sweep_delta.empty()) {
        os << "sweep.delta = ";
        for (std::size_t i = 0; i < cfg.sweep_delta.size(); ++i) {
            os << (i ? "," : "") << fmt17(cfg.sweep_delta[i]);
        }
        os << "\n";
    }
    if (!cfg.sweep_p.empty()) {
        os << "sweep.p = ";
        for (std::size_t i = 0; i < cfg.sweep_p.size(); ++i) {
            os << (i ? "," : "") << cfg.sweep_p[i];
        }
        os << "\n";
    }
    return os.str();
}

}  // namespace shockwave
