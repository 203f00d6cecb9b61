#include "v2vq/config.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace v2vq {

namespace {

constexpr const char* kFadingKey = "fading_mode";

const double* numeric_slot(const Config& c, const std::string& key) {
    if (key == "tx_power_dbm") return &c.radio.tx_power_dbm;
    if (key == "noise_density_dbm_hz") return &c.radio.noise_density_dbm_hz;
    if (key == "bandwidth_hz") return &c.radio.bandwidth_hz;
    if (key == "snr_threshold_db") return &c.radio.snr_threshold_db;
    if (key == "shadow_sigma_db") return &c.radio.shadow_sigma_db;
    if (key == "coverage_radius_m") return &c.radio.coverage_radius_m;
    if (key == "density_per_m") return &c.scenario.density_per_m;
    if (key == "span_m") return &c.scenario.span_m;
    if (key == "hop_distance_m") return &c.scenario.hop_distance_m;
    if (key == "slot_time_us") return &c.scenario.slot_time_us;
    if (key == "proc_time_us") return &c.scenario.proc_time_us;
    if (key == "max_delay_us") return &c.scenario.max_delay_us;
    if (key == "alpha") return &c.profile.alpha;
    if (key == "beta") return &c.profile.beta;
    return nullptr;
}

double* numeric_slot(Config& c, const std::string& key) {
    return const_cast<double*>(numeric_slot(static_cast<const Config&>(c), key));
}

std::string trim(const std::string& s) {
    const char* ws = " \t\r\n";
    auto b = s.find_first_not_of(ws);
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string& key, const std::string& text) {
    if (text.empty())
        throw ConfigError("config key '" + key + "': empty value");
    errno = 0;
    char* end = nullptr;
    double value = std::strtod(text.c_str(), &end);
    if (end != text.c_str() + text.size() || errno == ERANGE)
        throw ConfigError("config key '" + key + "': cannot parse value '" +
                          text + "'");
    return value;
}

void assign(Config& config, const std::string& key, const std::string& value,
            const std::string& where) {
    if (key == kFadingKey) {
        config.fading_mode = fading_mode_from_string(value);
        config.explicit_keys.insert(key);
        return;
    }
    double* slot = numeric_slot(config, key);
    if (!slot)
        throw ConfigError(where + ": unknown config key '" + key + "'");
    *slot = parse_number(key, value);
    config.explicit_keys.insert(key);
}

std::string render(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

} // namespace

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys = {
        "tx_power_dbm",  "noise_density_dbm_hz", "bandwidth_hz",
        "snr_threshold_db", "shadow_sigma_db",   "coverage_radius_m",
        "density_per_m", "span_m",               "hop_distance_m",
        "slot_time_us",  "proc_time_us",         "max_delay_us",
        "alpha",         "beta"};
    return keys;
}

Config parse_config_text(const std::string& text) {
    Config config;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string body = trim(line);
        if (body.empty() || body[0] == '#') continue;
        auto eq = body.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": expected 'key = value', got '" + body + "'");
        std::string key = trim(body.substr(0, eq));
        std::string value = trim(body.substr(eq + 1));
        assign(config, key, value, "config line " + std::to_string(lineno));
    }
    return config;
}

Config load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

void apply_override(Config& config, const std::string& assignment) {
    auto eq = assignment.find('=');
    if (eq == std::string::npos)
        throw ConfigError("override '" + assignment +
                          "': expected key=value");
    std::string key = trim(assignment.substr(0, eq));
    std::string value = trim(assignment.substr(eq + 1));
    assign(config, key, value, "override");
}

std::string serialize_config(const Config& config) {
    std::ostringstream os;
    for (const auto& key : config_keys())
        os << key << " = " << render(*numeric_slot(config, key)) << "\n";
    os << kFadingKey << " = " << to_string(config.fading_mode) << "\n";
    return os.str();
}

std::vector<std::string> defaulted_keys(const Config& config) {
    std::vector<std::string> out;
    for (const auto& key : config_keys())
        if (!config.explicit_keys.count(key)) out.push_back(key);
    return out;
}

std::string config_value(const Config& config, const std::string& key) {
    if (key == kFadingKey) return to_string(config.fading_mode);
    const double* slot = numeric_slot(config, key);
    if (!slot) throw ConfigError("unknown config key '" + key + "'");
    return render(*slot);
}

void validate_config(const Config& config) {
    std::vector<ValidationIssue> issues;
    for (auto&& v : check(config.radio)) issues.push_back(std::move(v));
    for (auto&& v : check(config.scenario)) issues.push_back(std::move(v));
    for (auto&& v : check(config.profile)) issues.push_back(std::move(v));
    if (!issues.empty()) throw ValidationError(std::move(issues));
}

std::string to_string(FadingMode mode) {
    return mode == FadingMode::per_slot ? "per_slot" : "per_hop";
}

FadingMode fading_mode_from_string(const std::string& text) {
    if (text == "per_slot") return FadingMode::per_slot;
    if (text == "per_hop") return FadingMode::per_hop;
    throw ConfigError("fading_mode must be per_slot or per_hop, got '" + text +
                      "'");
}

} // namespace v2vq
