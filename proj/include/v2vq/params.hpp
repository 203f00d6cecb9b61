#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace v2vq {

// Radio front-end and channel parameters. Absolute power levels are dBm,
// ratios are dB, bandwidth is Hz.
struct RadioParams {
    double tx_power_dbm = 30.0;          // transmit power
    double noise_density_dbm_hz = -174.0; // thermal noise PSD
    double bandwidth_hz = 200e6;         // receiver bandwidth
    double snr_threshold_db = 10.0;      // decode threshold theta
    double shadow_sigma_db = 5.0;        // lognormal shadowing std dev
    double coverage_radius_m = 100.0;    // unit-disk communication range
};

// Road segment and timing parameters. Distances in metres, times in
// microseconds, density in vehicles per metre.
struct ScenarioParams {
    double density_per_m = 0.1;   // Poisson vehicle density rho
    double span_m = 1000.0;       // source-to-destination distance L
    double hop_distance_m = 50.0; // target per-hop advance r
    double slot_time_us = 50.0;   // retransmission slot
    double proc_time_us = 20.0;   // per-relay processing time
    double max_delay_us = 20000.0; // delay budget T_max
};

// Application weighting of connectivity vs delay. alpha + beta must be 1.
struct ServiceProfile {
    double alpha = 0.5; // connectivity weight
    double beta = 0.5;  // delay weight
};

// One violated parameter constraint.
struct ValidationIssue {
    std::string field;   // offending field name
    std::string message; // human-readable constraint statement
};

// Thrown when validation finds at least one violation; carries all of them.
class ValidationError : public std::runtime_error {
  public:
    explicit ValidationError(std::vector<ValidationIssue> issues);
    const std::vector<ValidationIssue>& issues() const { return issues_; }

  private:
    static std::string format(const std::vector<ValidationIssue>& issues);
    std::vector<ValidationIssue> issues_;
};

// Collect constraint violations; empty result means the struct is usable.
std::vector<ValidationIssue> check(const RadioParams& radio);
std::vector<ValidationIssue> check(const ScenarioParams& scenario);
std::vector<ValidationIssue> check(const ServiceProfile& profile);

// Throw ValidationError listing every violation, or return the input
// unchanged. Idempotent: a value that passed once passes again.
template <typename T>
const T& validate(const T& value) {
    auto issues = check(value);
    if (!issues.empty()) throw ValidationError(std::move(issues));
    return value;
}

// Integrated thermal noise power over the receiver bandwidth, in dBm.
double noise_power_dbm(const RadioParams& radio);

} // namespace v2vq
