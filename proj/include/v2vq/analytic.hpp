#pragma once

#include "v2vq/params.hpp"

namespace v2vq {

// Closed-form evaluation of one (scenario, radio, profile) point.
// delay_us and quality use +/-infinity as in-band values: an unreachable
// hop yields infinite delay and, for beta > 0, quality -infinity.
struct LinkAssessment {
    double connectivity = 0.0;    // end-to-end success probability, in [0,1]
    double delay_us = 0.0;        // expected end-to-end delay, may be +inf
    double delay_indicator = 0.0; // 1 - delay/budget, <= 1, may be -inf
    int hop_count = 0;            // ceil(span / hop distance)
    double quality = 0.0;         // alpha*connectivity + beta*indicator
    bool underflow = false;       // hop success clamped below 1e-300
};

// Probability of exactly n intermediate vehicles on the span (Poisson).
double poisson_count_prob(int n, double span_m, double density_per_m);

// Decode margin eta(d) in dB: tx - threshold - noise - 69.6 - 20.9*log10(d).
double link_margin_db(double distance_m, const RadioParams& radio);

// Per-slot decode probability under log-normal shadowing; strictly in (0,1)
// up to floating-point saturation at the extremes.
double hop_success_prob(double distance_m, const RadioParams& radio);

// Mean slots-to-success times the slot time; +inf once hop_success_prob
// underflows below 1e-300.
double hop_delay_us(double distance_m, const RadioParams& radio,
                    double slot_time_us);

// ceil(span/hop) with a relative 1e-9 snap so quotients that are integers
// in exact arithmetic do not land one unit high; minimum 1.
int expected_hops(double span_m, double hop_distance_m);

// End-to-end expected delay: hops * hop_delay + (hops-1) * processing.
double multihop_delay_us(const ScenarioParams& scenario,
                         const RadioParams& radio);

// P{next-relay distance <= r0} for an Erlang(shape, rate=density) distance.
double erlang_distance_cdf(double r0_m, int shape, double density_per_m);

// Eq.-level end-to-end connectivity: per-hop Erlang CDF at the coverage
// radius, raised to the hop count.
double path_connectivity(const ScenarioParams& scenario,
                         const RadioParams& radio);

// Full composition: connectivity, delay, delay indicator and weighted
// quality score. With beta = 0 the delay term contributes exactly 0 even
// when the delay is infinite.
LinkAssessment assess_link(const ScenarioParams& scenario,
                           const RadioParams& radio,
                           const ServiceProfile& profile);

namespace detail {

// Integer-snapping ceiling: values within 1e-9 relative of an integer are
// treated as that integer. Keeps grid products like 0.1*50 on their exact-
// arithmetic side of the ceiling.
int snap_ceil(double x);

// P[N <= k] and P[N > k] for N ~ Poisson(lambda), each computed from its
// own side of the split so both carry full relative precision.
struct PoissonSplit {
    double below; // P[N <= k]
    double above; // P[N > k]
};
PoissonSplit poisson_cdf_split(int k, double lambda);

} // namespace detail

} // namespace v2vq
