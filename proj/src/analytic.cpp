#include "v2vq/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace v2vq {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMinHopSuccess = 1e-300; // below this, delay is +inf

void require(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
}

} // namespace

namespace detail {

int snap_ceil(double x) {
    double nearest = std::round(x);
    if (std::fabs(x - nearest) <= 1e-9 * std::max(1.0, std::fabs(x)))
        x = nearest;
    double up = std::ceil(x);
    if (up >= static_cast<double>(std::numeric_limits<int>::max()))
        return std::numeric_limits<int>::max();
    return static_cast<int>(up);
}

PoissonSplit poisson_cdf_split(int k, double lambda) {
    if (k < 0) return {0.0, 1.0};
    if (lambda <= 0.0) return {1.0, 0.0};
    if (static_cast<double>(k) + 1.0 <= lambda) {
        // Bulk sits above k: sum P[N <= k] head directly. Terms grow toward
        // i = k, so start there and recurse downward.
        double t = std::exp(k * std::log(lambda) - lambda -
                            std::lgamma(static_cast<double>(k) + 1.0));
        double sum = t;
        for (int i = k; i >= 1; --i) {
            t *= static_cast<double>(i) / lambda;
            sum += t;
            if (t <= sum * 1e-18) break;
        }
        double below = std::min(sum, 1.0);
        return {below, 1.0 - below};
    }
    // Bulk sits at or below k: sum the tail P[N > k] directly. Terms decay
    // from i = k+1 on since lambda < k+1.
    double t = std::exp((static_cast<double>(k) + 1.0) * std::log(lambda) -
                        lambda - std::lgamma(static_cast<double>(k) + 2.0));
    double sum = t;
    for (int i = k + 1; i < k + 1000000; ++i) {
        t *= lambda / (static_cast<double>(i) + 1.0);
        sum += t;
        if (t <= sum * 1e-18) break;
    }
    double above = std::min(sum, 1.0);
    return {1.0 - above, above};
}

} // namespace detail

double poisson_count_prob(int n, double span_m, double density_per_m) {
    require(n >= 0, "poisson_count_prob: n must be >= 0");
    require(span_m > 0.0, "poisson_count_prob: span_m must be > 0");
    require(density_per_m > 0.0, "poisson_count_prob: density_per_m must be > 0");
    double lambda = density_per_m * span_m;
    double logp = n * std::log(lambda) - lambda -
                  std::lgamma(static_cast<double>(n) + 1.0);
    return std::clamp(std::exp(logp), 0.0, 1.0);
}

double link_margin_db(double distance_m, const RadioParams& radio) {
    require(distance_m > 0.0, "link_margin_db: distance_m must be > 0");
    return radio.tx_power_dbm - radio.snr_threshold_db - noise_power_dbm(radio) -
           69.6 - 20.9 * std::log10(distance_m);
}

double hop_success_prob(double distance_m, const RadioParams& radio) {
    double eta = link_margin_db(distance_m, radio);
    double z = eta / (std::sqrt(2.0) * radio.shadow_sigma_db);
    // 0.5*erfc(-z) == 0.5*(1 + erf(z)) with full relative precision in the
    // left tail, where the erf form cancels.
    return 0.5 * std::erfc(-z);
}

double hop_delay_us(double distance_m, const RadioParams& radio,
                    double slot_time_us) {
    require(slot_time_us > 0.0, "hop_delay_us: slot_time_us must be > 0");
    double p = hop_success_prob(distance_m, radio);
    if (p < kMinHopSuccess) return kInf;
    return slot_time_us / p;
}

int expected_hops(double span_m, double hop_distance_m) {
    require(span_m > 0.0, "expected_hops: span_m must be > 0");
    require(hop_distance_m > 0.0, "expected_hops: hop_distance_m must be > 0");
    return std::max(1, detail::snap_ceil(span_m / hop_distance_m));
}

double multihop_delay_us(const ScenarioParams& scenario,
                         const RadioParams& radio) {
    validate(scenario);
    validate(radio);
    int k = expected_hops(scenario.span_m, scenario.hop_distance_m);
    double per_hop =
        hop_delay_us(scenario.hop_distance_m, radio, scenario.slot_time_us);
    return k * per_hop + (k - 1) * scenario.proc_time_us;
}

double erlang_distance_cdf(double r0_m, int shape, double density_per_m) {
    require(r0_m >= 0.0, "erlang_distance_cdf: r0_m must be >= 0");
    require(shape >= 1, "erlang_distance_cdf: shape must be >= 1");
    require(density_per_m > 0.0,
            "erlang_distance_cdf: density_per_m must be > 0");
    return detail::poisson_cdf_split(shape - 1, density_per_m * r0_m).above;
}

double path_connectivity(const ScenarioParams& scenario,
                         const RadioParams& radio) {
    validate(scenario);
    validate(radio);
    int shape = std::max(
        1, detail::snap_ceil(scenario.density_per_m * scenario.hop_distance_m));
    int hops = expected_hops(scenario.span_m, scenario.hop_distance_m);
    auto split = detail::poisson_cdf_split(
        shape - 1, scenario.density_per_m * radio.coverage_radius_m);
    if (split.above <= 0.0) return 0.0;
    // Raise the per-hop CDF to the hop count in log space; pick the log form
    // that keeps precision on whichever side of 1/2 the base lies.
    double log_base = split.above < 0.5 ? std::log(split.above)
                                        : std::log1p(-split.below);
    return std::clamp(std::exp(hops * log_base), 0.0, 1.0);
}

LinkAssessment assess_link(const ScenarioParams& scenario,
                           const RadioParams& radio,
                           const ServiceProfile& profile) {
    validate(scenario);
    validate(radio);
    validate(profile);
    LinkAssessment out;
    out.hop_count = expected_hops(scenario.span_m, scenario.hop_distance_m);
    out.connectivity = path_connectivity(scenario, radio);
    out.underflow =
        hop_success_prob(scenario.hop_distance_m, radio) < kMinHopSuccess;
    out.delay_us = multihop_delay_us(scenario, radio);
    out.delay_indicator = 1.0 - out.delay_us / scenario.max_delay_us;
    // beta = 0 must contribute an exact zero even when the indicator is
    // -infinity, so the degenerate profile reduces to quality == connectivity.
    if (profile.beta == 0.0)
        out.quality = profile.alpha * out.connectivity;
    else
        out.quality =
            profile.alpha * out.connectivity + profile.beta * out.delay_indicator;
    return out;
}

} // namespace v2vq
