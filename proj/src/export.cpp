#include "v2vq/export.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"

#include "v2vq/version.hpp"

namespace v2vq {

namespace {

constexpr const char* kHeader = "rho,r_m,alpha,beta,P,T_us,D,Q";
constexpr const char* kHeaderMc =
    "rho,r_m,alpha,beta,P,T_us,D,Q,P_ci_lo,P_ci_hi,T_se_us,trials";

std::string format_sig17(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

double parse_double(const std::string& text, const char* what) {
    errno = 0;
    char* end = nullptr;
    double v = std::strtod(text.c_str(), &end);
    if (end != text.c_str() + text.size())
        throw IoError(std::string(what) + ": cannot parse number '" + text +
                      "'");
    return v;
}

long parse_long(const std::string& text, const char* what) {
    errno = 0;
    char* end = nullptr;
    long v = std::strtol(text.c_str(), &end, 10);
    if (end != text.c_str() + text.size() || errno == ERANGE)
        throw IoError(std::string(what) + ": cannot parse integer '" + text +
                      "'");
    return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        auto pos = text.find(sep, start);
        if (pos == std::string::npos) {
            out.push_back(text.substr(start));
            return out;
        }
        out.push_back(text.substr(start, pos - start));
        start = pos + 1;
    }
}

std::string join_grid(const std::vector<double>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ',';
        out += format_sig17(values[i]);
    }
    return out;
}

// Round a double to what 12 significant digits can carry so JSON output
// prints the same digits the CSV does.
nlohmann::json json_number(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    return std::strtod(format_sig12(value).c_str(), nullptr);
}

void append_metadata(std::ostringstream& os, const SweepResult& result) {
    const Provenance& prov = result.provenance;
    os << "# v2vq " << V2VQ_VERSION_STRING << "\n";
    os << "# engine = " << to_string(prov.engine) << "\n";
    if (prov.engine == Engine::montecarlo) {
        os << "# seed = " << prov.sim.seed << "\n";
        os << "# trials = " << prov.sim.trials << "\n";
        os << "# max_slots_per_hop = " << prov.sim.max_slots_per_hop << "\n";
        os << "# placement = "
           << (prov.sim.placement == PlacementMode::equal_spacing
                   ? "equal_spacing"
                   : "poisson")
           << "\n";
        os << "# seed_mode = " << (prov.direct_seed ? "direct" : "per_row")
           << "\n";
    }
    std::istringstream params(serialize_config(prov.base));
    std::string line;
    while (std::getline(params, line)) os << "# " << line << "\n";
    os << "# grid_densities = " << join_grid(prov.grid.densities) << "\n";
    os << "# grid_hop_distances = " << join_grid(prov.grid.hop_distances)
       << "\n";
    os << "# grid_profiles = ";
    for (std::size_t i = 0; i < prov.grid.profiles.size(); ++i) {
        if (i) os << ',';
        os << format_sig17(prov.grid.profiles[i].alpha) << ':'
           << format_sig17(prov.grid.profiles[i].beta);
    }
    os << "\n";
    for (std::size_t i = 0; i < result.rows.size(); ++i)
        if (!result.rows[i].error.empty())
            os << "# row_error " << i << " = " << result.rows[i].error << "\n";
}

} // namespace

std::string format_sig12(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", value);
    return buf;
}

std::string render_csv(const SweepResult& result) {
    std::ostringstream os;
    append_metadata(os, result);
    const bool mc = result.provenance.engine == Engine::montecarlo;
    os << (mc ? kHeaderMc : kHeader) << "\n";
    for (const auto& row : result.rows) {
        os << format_sig12(row.rho) << ',' << format_sig12(row.r_m) << ','
           << format_sig12(row.alpha) << ',' << format_sig12(row.beta) << ','
           << format_sig12(row.P) << ',' << format_sig12(row.T_us) << ','
           << format_sig12(row.D) << ',' << format_sig12(row.Q);
        if (mc)
            os << ',' << format_sig12(row.P_ci_lo) << ','
               << format_sig12(row.P_ci_hi) << ',' << format_sig12(row.T_se_us)
               << ',' << row.trials;
        os << "\n";
    }
    return os.str();
}

std::string render_json(const SweepResult& result) {
    const Provenance& prov = result.provenance;
    const bool mc = prov.engine == Engine::montecarlo;
    nlohmann::json meta;
    meta["engine"] = to_string(prov.engine);
    if (mc) {
        meta["seed"] = prov.sim.seed;
        meta["trials"] = prov.sim.trials;
        meta["max_slots_per_hop"] = prov.sim.max_slots_per_hop;
        meta["placement"] = prov.sim.placement == PlacementMode::equal_spacing
                                ? "equal_spacing"
                                : "poisson";
        meta["seed_mode"] = prov.direct_seed ? "direct" : "per_row";
    }
    nlohmann::json params;
    for (const auto& key : config_keys())
        params[key] =
            std::strtod(config_value(prov.base, key).c_str(), nullptr);
    params["fading_mode"] = to_string(prov.base.fading_mode);
    meta["params"] = params;
    nlohmann::json grid;
    grid["densities"] = prov.grid.densities;
    grid["hop_distances"] = prov.grid.hop_distances;
    auto profiles = nlohmann::json::array();
    for (const auto& p : prov.grid.profiles)
        profiles.push_back({p.alpha, p.beta});
    grid["profiles"] = profiles;
    meta["grid"] = grid;

    auto rows = nlohmann::json::array();
    for (const auto& row : result.rows) {
        nlohmann::json r;
        r["rho"] = json_number(row.rho);
        r["r_m"] = json_number(row.r_m);
        r["alpha"] = json_number(row.alpha);
        r["beta"] = json_number(row.beta);
        r["P"] = json_number(row.P);
        r["T_us"] = json_number(row.T_us);
        r["D"] = json_number(row.D);
        r["Q"] = json_number(row.Q);
        if (mc) {
            r["P_ci_lo"] = json_number(row.P_ci_lo);
            r["P_ci_hi"] = json_number(row.P_ci_hi);
            r["T_se_us"] = json_number(row.T_se_us);
            r["trials"] = row.trials;
        }
        if (!row.error.empty()) r["error"] = row.error;
        rows.push_back(std::move(r));
    }

    nlohmann::json doc;
    doc["v2vq"] = V2VQ_VERSION_STRING;
    doc["metadata"] = meta;
    doc["rows"] = rows;
    return doc.dump(2) + "\n";
}

SweepResult read_csv(const std::string& text) {
    SweepResult result;
    Provenance& prov = result.provenance;
    bool saw_header = false;
    bool mc = false;
    std::vector<std::pair<std::size_t, std::string>> row_errors;

    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::string body = line.substr(1);
            while (!body.empty() && body.front() == ' ') body.erase(0, 1);
            if (body.rfind("v2vq ", 0) == 0) continue; // version banner
            auto eq = body.find('=');
            if (eq == std::string::npos) continue; // free-form comment
            std::string key = body.substr(0, eq);
            std::string value = body.substr(eq + 1);
            while (!key.empty() && key.back() == ' ') key.pop_back();
            while (!value.empty() && value.front() == ' ') value.erase(0, 1);
            if (key.rfind("row_error ", 0) == 0) {
                std::size_t idx = static_cast<std::size_t>(
                    parse_long(key.substr(10), "row_error index"));
                row_errors.emplace_back(idx, value);
            } else if (key == "engine") {
                prov.engine = engine_from_string(value);
            } else if (key == "seed") {
                prov.sim.seed = std::strtoull(value.c_str(), nullptr, 10);
            } else if (key == "trials") {
                prov.sim.trials = parse_long(value, "trials");
            } else if (key == "max_slots_per_hop") {
                prov.sim.max_slots_per_hop =
                    parse_long(value, "max_slots_per_hop");
            } else if (key == "placement") {
                prov.sim.placement = value == "equal_spacing"
                                         ? PlacementMode::equal_spacing
                                         : PlacementMode::poisson;
            } else if (key == "seed_mode") {
                prov.direct_seed = value == "direct";
            } else if (key == "grid_densities") {
                for (const auto& item : split(value, ','))
                    prov.grid.densities.push_back(
                        parse_double(item, "grid_densities"));
            } else if (key == "grid_hop_distances") {
                for (const auto& item : split(value, ','))
                    prov.grid.hop_distances.push_back(
                        parse_double(item, "grid_hop_distances"));
            } else if (key == "grid_profiles") {
                for (const auto& item : split(value, ',')) {
                    auto colon = item.find(':');
                    if (colon == std::string::npos)
                        throw IoError("grid_profiles: expected alpha:beta, got '" +
                                      item + "'");
                    prov.grid.profiles.push_back(
                        {parse_double(item.substr(0, colon), "grid_profiles"),
                         parse_double(item.substr(colon + 1),
                                      "grid_profiles")});
                }
            } else {
                // a config parameter line
                apply_override(prov.base, key + "=" + value);
            }
            continue;
        }
        if (!saw_header) {
            if (line == kHeader) {
                mc = false;
            } else if (line == kHeaderMc) {
                mc = true;
            } else {
                throw IoError("csv line " + std::to_string(lineno) +
                              ": unexpected header '" + line + "'");
            }
            saw_header = true;
            continue;
        }
        auto fields = split(line, ',');
        const std::size_t expected = mc ? 12 : 8;
        if (fields.size() != expected)
            throw IoError("csv line " + std::to_string(lineno) + ": expected " +
                          std::to_string(expected) + " fields, got " +
                          std::to_string(fields.size()));
        SweepRow row;
        row.rho = parse_double(fields[0], "rho");
        row.r_m = parse_double(fields[1], "r_m");
        row.alpha = parse_double(fields[2], "alpha");
        row.beta = parse_double(fields[3], "beta");
        row.P = parse_double(fields[4], "P");
        row.T_us = parse_double(fields[5], "T_us");
        row.D = parse_double(fields[6], "D");
        row.Q = parse_double(fields[7], "Q");
        if (mc) {
            row.P_ci_lo = parse_double(fields[8], "P_ci_lo");
            row.P_ci_hi = parse_double(fields[9], "P_ci_hi");
            row.T_se_us = parse_double(fields[10], "T_se_us");
            row.trials = parse_long(fields[11], "trials");
        }
        result.rows.push_back(std::move(row));
    }
    if (!saw_header) throw IoError("csv input has no header line");
    prov.sim.fading = prov.base.fading_mode;
    for (const auto& [idx, msg] : row_errors) {
        if (idx >= result.rows.size())
            throw IoError("row_error index " + std::to_string(idx) +
                          " out of range");
        result.rows[idx].error = msg;
    }
    return result;
}

SweepResult read_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return read_csv(buf.str());
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << content;
    out.flush();
    if (!out) throw IoError("write failed for '" + path + "'");
}

SweepResult wrap_ensemble(const EnsembleStats& stats, const Config& config,
                          const SimOptions& options) {
    SweepResult result;
    result.provenance.base = config;
    result.provenance.base.fading_mode = options.fading;
    result.provenance.grid.densities = {config.scenario.density_per_m};
    result.provenance.grid.hop_distances = {config.scenario.hop_distance_m};
    result.provenance.grid.profiles = {config.profile};
    result.provenance.engine = Engine::montecarlo;
    result.provenance.sim = options;
    result.provenance.direct_seed = true;

    SweepRow row;
    row.rho = config.scenario.density_per_m;
    row.r_m = config.scenario.hop_distance_m;
    row.alpha = config.profile.alpha;
    row.beta = config.profile.beta;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    row.P = stats.connectivity_hat;
    row.P_ci_lo = stats.connectivity_ci.lo;
    row.P_ci_hi = stats.connectivity_ci.hi;
    row.trials = stats.trials;
    row.T_us = stats.mean_delay_us ? *stats.mean_delay_us : nan;
    row.D = stats.mean_delay_us
                ? 1.0 - *stats.mean_delay_us / config.scenario.max_delay_us
                : nan;
    row.T_se_us = stats.delay_se_us ? *stats.delay_se_us : nan;
    row.Q = stats.quality_hat ? *stats.quality_hat : nan;
    if (stats.connected == 0) row.error = "insufficient_data";
    result.rows.push_back(std::move(row));
    return result;
}

} // namespace v2vq
