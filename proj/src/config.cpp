#include "conf4/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "conf4/errors.hpp"

namespace conf4 {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& s, const std::string& where) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0')
        throw config_error(where + ": cannot parse '" + s + "' as a number");
    return v;
}

int to_int(const std::string& s, const std::string& where) {
    char* end = nullptr;
    const long v = std::strtol(s.c_str(), &end, 10);
    if (end == s.c_str() || *end != '\0')
        throw config_error(where + ": cannot parse '" + s + "' as an integer");
    return static_cast<int>(v);
}

}  // namespace

ConfigFile ConfigFile::parse(const std::string& text) {
    ConfigFile cfg;
    std::istringstream is(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw config_error("config line " + std::to_string(lineno) + ": unterminated section");
            section = trim(line.substr(1, line.size() - 2));
            cfg.sections_[section];
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw config_error("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw config_error("config line " + std::to_string(lineno) + ": empty key");
        cfg.sections_[section][key] = value;
    }
    return cfg;
}

ConfigFile ConfigFile::parse_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw config_error("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << is.rdbuf();
    return parse(buf.str());
}

bool ConfigFile::has_section(const std::string& section) const {
    return sections_.count(section) > 0;
}

bool ConfigFile::has(const std::string& section, const std::string& key) const {
    const auto it = sections_.find(section);
    return it != sections_.end() && it->second.count(key) > 0;
}

std::string ConfigFile::get_string(const std::string& section, const std::string& key) const {
    if (!has(section, key))
        throw config_error("config: missing [" + section + "] " + key);
    return sections_.at(section).at(key);
}

std::string ConfigFile::get_string_or(const std::string& section, const std::string& key,
                                      const std::string& fallback) const {
    return has(section, key) ? get_string(section, key) : fallback;
}

double ConfigFile::get_double(const std::string& section, const std::string& key) const {
    return to_double(get_string(section, key), "[" + section + "] " + key);
}

double ConfigFile::get_double_or(const std::string& section, const std::string& key,
                                 double fallback) const {
    return has(section, key) ? get_double(section, key) : fallback;
}

int ConfigFile::get_int(const std::string& section, const std::string& key) const {
    return to_int(get_string(section, key), "[" + section + "] " + key);
}

int ConfigFile::get_int_or(const std::string& section, const std::string& key, int fallback) const {
    return has(section, key) ? get_int(section, key) : fallback;
}

std::vector<double> ConfigFile::get_doubles(const std::string& section, const std::string& key) const {
    const std::string raw = get_string(section, key);
    std::vector<double> out;
    std::string item;
    std::istringstream is(raw);
    while (std::getline(is, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        out.push_back(to_double(item, "[" + section + "] " + key));
    }
    return out;
}

Background load_background(const ConfigFile& cfg) {
    const std::string kind = cfg.get_string("background", "kind");
    Background bg;
    if (kind == "round_s4") {
        bg = RoundS4{cfg.get_double_or("background", "radius", 1.0)};
    } else if (kind == "s1xs3") {
        bg = S1xS3{cfg.get_double_or("background", "circumference", S1xS3{}.circumference),
                   cfg.get_double_or("background", "sphere_radius", 1.0)};
    } else if (kind == "product_surfaces") {
        bg = ProductSurfaces{cfg.get_double("background", "kappa1"),
                             cfg.get_double("background", "kappa2"),
                             cfg.get_double("background", "area1"),
                             cfg.get_double("background", "area2")};
    } else if (kind == "constants_only") {
        bg = ConstantsOnly{cfg.get_string("background", "name"),
                           cfg.get_int("background", "chi"),
                           cfg.get_double("background", "weyl_l2"),
                           cfg.get_double("background", "yamabe"),
                           cfg.get_double("background", "q_total")};
    } else {
        throw config_error("unknown background kind '" + kind + "'");
    }
    validate(bg);
    return bg;
}

DerivScheme scheme_from_string(const std::string& name) {
    if (name == "spectral") return DerivScheme::Spectral;
    if (name == "fd4") return DerivScheme::FiniteDifference4;
    throw config_error("unknown derivative scheme '" + name + "' (spectral | fd4)");
}

SolveConfig load_solve_config(const ConfigFile& cfg) {
    SolveConfig sc;
    sc.delta = cfg.get_double_or("solve", "delta", sc.delta);
    sc.t_target = cfg.get_double_or("solve", "t_target", sc.t_target);
    sc.grid_n = cfg.get_int_or("solve", "grid_n", sc.grid_n);
    sc.t_step_init = cfg.get_double_or("solve", "t_step_init", sc.t_step_init);
    sc.t_step_min = cfg.get_double_or("solve", "t_step_min", sc.t_step_min);
    sc.newton_tol = cfg.get_double_or("solve", "newton_tol", sc.newton_tol);
    sc.newton_max_iter = cfg.get_int_or("solve", "newton_max_iter", sc.newton_max_iter);
    sc.cone_margin_min = cfg.get_double_or("solve", "cone_margin_min", sc.cone_margin_min);
    sc.scheme = scheme_from_string(cfg.get_string_or("solve", "scheme", "spectral"));
    sc.monitor_yamabe = cfg.get_double_or("solve", "monitor_yamabe", sc.monitor_yamabe);
    sc.validate();
    return sc;
}

SpectrumRequest load_spectrum_request(const ConfigFile& cfg) {
    const std::string kind = cfg.get_string("spectrum", "kind");
    SpectrumRequest req;
    if (kind == "product") {
        ProductSpectrumInput inp;
        inp.kappa1 = cfg.get_double("spectrum", "kappa1");
        inp.kappa2 = cfg.get_double("spectrum", "kappa2");
        inp.eigs1 = cfg.get_doubles("spectrum", "eigs1");
        inp.eigs2 = cfg.get_doubles("spectrum", "eigs2");
        inp.validate();
        req.product = std::move(inp);
    } else if (kind == "reduced") {
        ReducedSpectrumRequest r;
        r.grid_n = cfg.get_int_or("spectrum", "grid_n", r.grid_n);
        r.circumference = cfg.get_double_or("spectrum", "circumference", r.circumference);
        if (r.grid_n < 16 || r.grid_n % 2 != 0)
            throw config_error("[spectrum] grid_n must be even and at least 16");
        if (r.circumference <= 0.0)
            throw config_error("[spectrum] circumference must be positive");
        req.reduced = r;
    } else {
        throw config_error("unknown spectrum kind '" + kind + "' (product | reduced)");
    }
    return req;
}

}  // namespace conf4
