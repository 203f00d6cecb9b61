#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "v2vq/config.hpp"
#include "v2vq/params.hpp"

namespace v2vq {

// One sampled road: vehicle positions, strictly increasing, source at 0 and
// destination at span_m always present.
struct VehiclePlacement {
    std::vector<double> positions_m;
};

// Greedy relay selection result: vehicle indices visited plus the distance
// of each hop between consecutive relays.
struct RelayChain {
    std::vector<int> indices;
    std::vector<double> hop_distances_m;
};

// Result of replaying the slot-level retransmission process on one chain.
struct TrialOutcome {
    bool connected = false;
    double delay_us = 0.0; // +inf when disconnected or truncated
    int hop_count = 0;
    bool truncated = false; // some hop hit the per-hop slot cap
};

struct ConfidenceInterval {
    double lo = 0.0;
    double hi = 0.0;
};

// Ensemble aggregates. Delay statistics cover connected, untruncated trials
// only and are absent when no such trial exists; quality_hat needs the mean
// delay unless beta is exactly 0.
struct EnsembleStats {
    long trials = 0;
    long connected = 0;
    long truncated = 0; // connected trials that hit the slot cap
    double connectivity_hat = 0.0;
    ConfidenceInterval connectivity_ci; // 95% Wilson interval
    std::optional<double> mean_delay_us;
    std::optional<double> delay_se_us; // standard error of the mean
    std::optional<double> quality_hat;
    std::uint64_t seed = 0;
};

// Vehicle layout source: Poisson process sampling, or deterministic equal
// spacing at exactly hop_distance_m (isolates the fixed-hop-length
// assumption of the closed-form delay).
enum class PlacementMode { poisson, equal_spacing };

struct SimOptions {
    long trials = 10000;
    std::uint64_t seed = 0;
    long max_slots_per_hop = 1000000;
    FadingMode fading = FadingMode::per_slot;
    PlacementMode placement = PlacementMode::poisson;
    int threads = 0; // 0 = hardware concurrency
};

// Raised when zero trials connect: the delay mean is undefined. The partial
// stats (connectivity_hat = 0 with its CI) are still carried.
class InsufficientData : public std::runtime_error {
  public:
    explicit InsufficientData(EnsembleStats partial)
        : std::runtime_error(
              "insufficient data: no connected trials, mean delay undefined"),
          stats_(std::move(partial)) {}
    const EnsembleStats& stats() const { return stats_; }

  private:
    EnsembleStats stats_;
};

// Independent, reproducible generator for one trial of one run.
std::mt19937_64 make_trial_rng(std::uint64_t seed, std::uint64_t trial);

// Poisson(rho*L) intermediate vehicles, i.i.d. uniform positions, sorted,
// with endpoints 0 and span_m attached.
VehiclePlacement spawn_vehicles(const ScenarioParams& scenario,
                                std::mt19937_64& rng);

// Deterministic layout with vehicles every hop_distance_m metres.
VehiclePlacement equal_spacing_placement(const ScenarioParams& scenario);

// Greedy next-relay choice: among vehicles strictly ahead, take the one
// closest to current position + hop_distance_m; ties go to the farther
// vehicle.
RelayChain select_relays(const VehiclePlacement& placement,
                         double hop_distance_m);

// Unit-disk test: every hop within the coverage radius (boundary counts).
bool check_connectivity(const RelayChain& chain, const RadioParams& radio);

// Slot-by-slot retransmission replay over a connected chain. Per-slot
// fading redraws shadowing every slot; per-hop fading draws once per hop,
// so a failed draw truncates immediately.
TrialOutcome simulate_delay(const RelayChain& chain, const RadioParams& radio,
                            const ScenarioParams& scenario,
                            std::mt19937_64& rng, long max_slots_per_hop,
                            FadingMode fading = FadingMode::per_slot);

// Run trials independent trials; deterministic for fixed (seed, trials)
// regardless of thread count. Throws InsufficientData when nothing
// connected.
EnsembleStats run_ensemble(const ScenarioParams& scenario,
                           const RadioParams& radio,
                           const ServiceProfile& profile,
                           const SimOptions& options);

EnsembleStats run_ensemble(const ScenarioParams& scenario,
                           const RadioParams& radio,
                           const ServiceProfile& profile, long trials,
                           std::uint64_t seed,
                           long max_slots_per_hop = 1000000);

} // namespace v2vq
