#include "v2vq/mc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "v2vq/analytic.hpp"

namespace v2vq {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
}

std::uint64_t splitmix64_next(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

ConfidenceInterval wilson95(long successes, long n) {
    // Wilson score interval; bounds stay inside [0,1] by construction.
    const double z = 1.959963984540054;
    double phat = static_cast<double>(successes) / static_cast<double>(n);
    double z2n = z * z / static_cast<double>(n);
    double denom = 1.0 + z2n;
    double center = (phat + 0.5 * z2n) / denom;
    double half =
        z *
        std::sqrt(phat * (1.0 - phat) / static_cast<double>(n) +
                  z2n / (4.0 * static_cast<double>(n))) /
        denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

struct TrialRecord {
    bool connected = false;
    bool truncated = false;
    double delay_us = kInf;
};

} // namespace

std::mt19937_64 make_trial_rng(std::uint64_t seed, std::uint64_t trial) {
    // Distinct substream per (seed, trial): mix both through splitmix64 and
    // seed the engine from the resulting words.
    std::uint64_t state = seed ^ (0x9E3779B97F4A7C15ull * (trial + 1));
    std::uint64_t a = splitmix64_next(state);
    std::uint64_t b = splitmix64_next(state);
    std::seed_seq seq{static_cast<std::uint32_t>(a),
                      static_cast<std::uint32_t>(a >> 32),
                      static_cast<std::uint32_t>(b),
                      static_cast<std::uint32_t>(b >> 32)};
    return std::mt19937_64(seq);
}

VehiclePlacement spawn_vehicles(const ScenarioParams& scenario,
                                std::mt19937_64& rng) {
    validate(scenario);
    const double span = scenario.span_m;
    std::poisson_distribution<long> count(scenario.density_per_m * span);
    long n = count(rng);
    std::vector<double> pts;
    pts.reserve(static_cast<std::size_t>(n));
    std::uniform_real_distribution<double> uniform(0.0, span);
    for (long i = 0; i < n; ++i) pts.push_back(uniform(rng));
    std::sort(pts.begin(), pts.end());

    VehiclePlacement placement;
    placement.positions_m.reserve(pts.size() + 2);
    placement.positions_m.push_back(0.0);
    double prev = 0.0;
    for (double p : pts) {
        // enforce strict increase and keep endpoints exclusive
        if (p > prev && p < span) {
            placement.positions_m.push_back(p);
            prev = p;
        }
    }
    placement.positions_m.push_back(span);
    return placement;
}

VehiclePlacement equal_spacing_placement(const ScenarioParams& scenario) {
    validate(scenario);
    const double span = scenario.span_m;
    const double r = scenario.hop_distance_m;
    int hops = expected_hops(span, r);
    VehiclePlacement placement;
    placement.positions_m.reserve(static_cast<std::size_t>(hops) + 1);
    placement.positions_m.push_back(0.0);
    for (int j = 1; j < hops; ++j) {
        double p = j * r;
        if (p >= span) break;
        placement.positions_m.push_back(p);
    }
    placement.positions_m.push_back(span);
    return placement;
}

RelayChain select_relays(const VehiclePlacement& placement,
                         double hop_distance_m) {
    const auto& pos = placement.positions_m;
    require(pos.size() >= 2, "select_relays: placement needs >= 2 positions");
    require(hop_distance_m > 0.0, "select_relays: hop_distance_m must be > 0");
    const int last = static_cast<int>(pos.size()) - 1;

    RelayChain chain;
    chain.indices.push_back(0);
    int cur = 0;
    while (cur != last) {
        double target = pos[cur] + hop_distance_m;
        auto it = std::lower_bound(pos.begin() + cur + 1, pos.end(), target);
        int next;
        if (it == pos.end()) {
            next = last; // everything ahead is short of target: take farthest
        } else {
            int hi = static_cast<int>(it - pos.begin());
            if (hi == cur + 1) {
                next = hi;
            } else {
                double d_lo = target - pos[hi - 1];
                double d_hi = pos[hi] - target;
                next = d_hi <= d_lo ? hi : hi - 1; // tie: farther wins
            }
        }
        chain.hop_distances_m.push_back(pos[next] - pos[cur]);
        chain.indices.push_back(next);
        cur = next;
    }
    return chain;
}

bool check_connectivity(const RelayChain& chain, const RadioParams& radio) {
    for (double d : chain.hop_distances_m)
        if (d > radio.coverage_radius_m) return false;
    return true;
}

TrialOutcome simulate_delay(const RelayChain& chain, const RadioParams& radio,
                            const ScenarioParams& scenario,
                            std::mt19937_64& rng, long max_slots_per_hop,
                            FadingMode fading) {
    require(max_slots_per_hop >= 1,
            "simulate_delay: max_slots_per_hop must be >= 1");
    std::normal_distribution<double> shadow(0.0, radio.shadow_sigma_db);
    const int hops = static_cast<int>(chain.hop_distances_m.size());

    TrialOutcome out;
    out.connected = true;
    out.hop_count = hops;
    double total_slots = 0.0;
    for (double d : chain.hop_distances_m) {
        double margin = link_margin_db(d, radio);
        long slots = 0;
        bool success = false;
        if (fading == FadingMode::per_hop) {
            // one shadowing draw decides the hop for good
            slots = 1;
            success = shadow(rng) <= margin;
        } else {
            while (slots < max_slots_per_hop) {
                ++slots;
                if (shadow(rng) <= margin) {
                    success = true;
                    break;
                }
            }
        }
        if (!success) {
            out.truncated = true;
            out.delay_us = kInf;
            return out;
        }
        total_slots += static_cast<double>(slots);
    }
    out.delay_us = total_slots * scenario.slot_time_us +
                   (hops - 1) * scenario.proc_time_us;
    return out;
}

EnsembleStats run_ensemble(const ScenarioParams& scenario,
                           const RadioParams& radio,
                           const ServiceProfile& profile,
                           const SimOptions& options) {
    validate(scenario);
    validate(radio);
    validate(profile);
    require(options.trials >= 1, "run_ensemble: trials must be >= 1");
    require(options.max_slots_per_hop >= 1,
            "run_ensemble: max_slots_per_hop must be >= 1");

    const long trials = options.trials;
    std::vector<TrialRecord> records(static_cast<std::size_t>(trials));
    auto worker = [&](long lo, long hi) {
        for (long t = lo; t < hi; ++t) {
            auto rng = make_trial_rng(options.seed, static_cast<std::uint64_t>(t));
            VehiclePlacement placement =
                options.placement == PlacementMode::equal_spacing
                    ? equal_spacing_placement(scenario)
                    : spawn_vehicles(scenario, rng);
            RelayChain chain = select_relays(placement, scenario.hop_distance_m);
            TrialRecord rec;
            if (check_connectivity(chain, radio)) {
                rec.connected = true;
                TrialOutcome outcome =
                    simulate_delay(chain, radio, scenario, rng,
                                   options.max_slots_per_hop, options.fading);
                rec.truncated = outcome.truncated;
                rec.delay_us = outcome.delay_us;
            }
            records[static_cast<std::size_t>(t)] = rec;
        }
    };

    int threads = options.threads;
    if (threads <= 0) {
        unsigned hw = std::thread::hardware_concurrency();
        threads = hw == 0 ? 1 : static_cast<int>(hw);
    }
    threads = static_cast<int>(
        std::min<long>(threads, trials)); // no empty workers
    if (threads <= 1) {
        worker(0, trials);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(threads));
        long chunk = (trials + threads - 1) / threads;
        for (int i = 0; i < threads; ++i) {
            long lo = i * chunk;
            long hi = std::min(trials, lo + chunk);
            if (lo >= hi) break;
            pool.emplace_back(worker, lo, hi);
        }
        for (auto& th : pool) th.join();
    }

    // Reduce strictly in trial order so results do not depend on the thread
    // partition above.
    long connected = 0, truncated = 0, used = 0;
    double mean = 0.0, m2 = 0.0;
    for (const auto& rec : records) {
        if (!rec.connected) continue;
        ++connected;
        if (rec.truncated) {
            ++truncated;
            continue;
        }
        ++used;
        double delta = rec.delay_us - mean;
        mean += delta / static_cast<double>(used);
        m2 += delta * (rec.delay_us - mean);
    }

    EnsembleStats stats;
    stats.trials = trials;
    stats.connected = connected;
    stats.truncated = truncated;
    stats.seed = options.seed;
    stats.connectivity_hat =
        static_cast<double>(connected) / static_cast<double>(trials);
    stats.connectivity_ci = wilson95(connected, trials);
    if (used >= 1) {
        stats.mean_delay_us = mean;
        if (used >= 2) {
            double variance = m2 / static_cast<double>(used - 1);
            stats.delay_se_us =
                std::sqrt(std::max(variance, 0.0) / static_cast<double>(used));
        }
    }
    if (profile.beta == 0.0) {
        stats.quality_hat = profile.alpha * stats.connectivity_hat;
    } else if (stats.mean_delay_us) {
        stats.quality_hat =
            profile.alpha * stats.connectivity_hat +
            profile.beta * (1.0 - *stats.mean_delay_us / scenario.max_delay_us);
    }
    if (connected == 0) throw InsufficientData(stats);
    return stats;
}

EnsembleStats run_ensemble(const ScenarioParams& scenario,
                           const RadioParams& radio,
                           const ServiceProfile& profile, long trials,
                           std::uint64_t seed, long max_slots_per_hop) {
    SimOptions options;
    options.trials = trials;
    options.seed = seed;
    options.max_slots_per_hop = max_slots_per_hop;
    return run_ensemble(scenario, radio, profile, options);
}

} // namespace v2vq
