#include "v2vq/params.hpp"

#include <cmath>
#include <sstream>

namespace v2vq {

namespace {

void require(std::vector<ValidationIssue>& out, bool ok, const char* field,
             const char* constraint) {
    if (!ok) out.push_back({field, constraint});
}

bool finite(double x) { return std::isfinite(x); }

} // namespace

ValidationError::ValidationError(std::vector<ValidationIssue> issues)
    : std::runtime_error(format(issues)), issues_(std::move(issues)) {}

std::string ValidationError::format(const std::vector<ValidationIssue>& issues) {
    std::ostringstream os;
    os << "invalid parameters:";
    for (const auto& it : issues) os << " [" << it.field << ": " << it.message << "]";
    return os.str();
}

std::vector<ValidationIssue> check(const RadioParams& radio) {
    std::vector<ValidationIssue> out;
    require(out, finite(radio.tx_power_dbm), "tx_power_dbm", "must be finite");
    require(out, finite(radio.noise_density_dbm_hz), "noise_density_dbm_hz",
            "must be finite");
    require(out, finite(radio.bandwidth_hz) && radio.bandwidth_hz > 0.0,
            "bandwidth_hz", "must be > 0");
    require(out, finite(radio.snr_threshold_db), "snr_threshold_db",
            "must be finite");
    require(out, finite(radio.shadow_sigma_db) && radio.shadow_sigma_db > 0.0,
            "shadow_sigma_db", "must be > 0");
    require(out, finite(radio.coverage_radius_m) && radio.coverage_radius_m > 0.0,
            "coverage_radius_m", "must be > 0");
    if (out.empty()) {
        // Integrated noise power must come out finite; guaranteed once the
        // per-field constraints hold, but checked to honor the contract.
        require(out, finite(noise_power_dbm(radio)), "bandwidth_hz",
                "noise power dBm must be finite");
    }
    return out;
}

std::vector<ValidationIssue> check(const ScenarioParams& scenario) {
    std::vector<ValidationIssue> out;
    require(out, finite(scenario.density_per_m) && scenario.density_per_m > 0.0,
            "density_per_m", "must be > 0");
    require(out, finite(scenario.span_m) && scenario.span_m > 0.0, "span_m",
            "must be > 0");
    require(out,
            finite(scenario.hop_distance_m) && scenario.hop_distance_m > 0.0,
            "hop_distance_m", "must be > 0");
    require(out, finite(scenario.slot_time_us) && scenario.slot_time_us > 0.0,
            "slot_time_us", "must be > 0");
    require(out, finite(scenario.proc_time_us) && scenario.proc_time_us >= 0.0,
            "proc_time_us", "must be >= 0");
    require(out, finite(scenario.max_delay_us) && scenario.max_delay_us > 0.0,
            "max_delay_us", "must be > 0");
    return out;
}

std::vector<ValidationIssue> check(const ServiceProfile& profile) {
    std::vector<ValidationIssue> out;
    require(out,
            finite(profile.alpha) && profile.alpha >= 0.0 && profile.alpha <= 1.0,
            "alpha", "must be in [0,1]");
    require(out,
            finite(profile.beta) && profile.beta >= 0.0 && profile.beta <= 1.0,
            "beta", "must be in [0,1]");
    if (finite(profile.alpha) && finite(profile.beta)) {
        require(out, std::fabs(profile.alpha + profile.beta - 1.0) <= 1e-12,
                "alpha", "alpha+beta != 1 (tolerance 1e-12)");
    }
    return out;
}

double noise_power_dbm(const RadioParams& radio) {
    return radio.noise_density_dbm_hz + 10.0 * std::log10(radio.bandwidth_hz);
}

} // namespace v2vq
