#include "v2vq/optimize.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace v2vq {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

void require(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
}

bool strictly_increasing(const std::vector<double>& xs) {
    for (std::size_t i = 1; i < xs.size(); ++i)
        if (!(xs[i] > xs[i - 1])) return false;
    return true;
}

SweepRow evaluate_row(double rho, double r, const ServiceProfile& profile,
                      const RadioParams& radio, ScenarioParams scenario,
                      Engine engine, const SimOptions& sim,
                      std::uint64_t row_index) {
    scenario.density_per_m = rho;
    scenario.hop_distance_m = r;
    SweepRow row;
    row.rho = rho;
    row.r_m = r;
    row.alpha = profile.alpha;
    row.beta = profile.beta;
    row.P = row.T_us = row.D = row.Q = kNan;
    row.P_ci_lo = row.P_ci_hi = row.T_se_us = kNan;
    try {
        if (engine == Engine::analytic) {
            LinkAssessment a = assess_link(scenario, radio, profile);
            row.P = a.connectivity;
            row.T_us = a.delay_us;
            row.D = a.delay_indicator;
            row.Q = a.quality;
        } else {
            SimOptions options = sim;
            options.seed = derive_row_seed(sim.seed, row_index);
            EnsembleStats stats;
            try {
                stats = run_ensemble(scenario, radio, profile, options);
            } catch (const InsufficientData& e) {
                stats = e.stats();
                row.error = "insufficient_data";
            }
            row.P = stats.connectivity_hat;
            row.P_ci_lo = stats.connectivity_ci.lo;
            row.P_ci_hi = stats.connectivity_ci.hi;
            row.trials = stats.trials;
            if (stats.mean_delay_us) {
                row.T_us = *stats.mean_delay_us;
                row.D = 1.0 - row.T_us / scenario.max_delay_us;
            }
            if (stats.delay_se_us) row.T_se_us = *stats.delay_se_us;
            if (stats.quality_hat) row.Q = *stats.quality_hat;
        }
    } catch (const std::exception& e) {
        row.error = e.what();
    }
    return row;
}

} // namespace

std::string to_string(Engine engine) {
    return engine == Engine::analytic ? "analytic" : "montecarlo";
}

Engine engine_from_string(const std::string& text) {
    if (text == "analytic") return Engine::analytic;
    if (text == "montecarlo" || text == "mc") return Engine::montecarlo;
    throw std::invalid_argument("engine must be analytic or mc, got '" + text +
                                "'");
}

void validate_grid(const SweepGrid& grid) {
    require(!grid.densities.empty(), "sweep grid: densities list is empty");
    require(!grid.hop_distances.empty(),
            "sweep grid: hop_distances list is empty");
    require(!grid.profiles.empty(), "sweep grid: profiles list is empty");
    require(strictly_increasing(grid.densities),
            "sweep grid: densities must be strictly increasing");
    require(strictly_increasing(grid.hop_distances),
            "sweep grid: hop_distances must be strictly increasing");
    for (double rho : grid.densities)
        require(std::isfinite(rho) && rho > 0.0,
                "sweep grid: densities must be > 0");
    for (double r : grid.hop_distances)
        require(std::isfinite(r) && r > 0.0,
                "sweep grid: hop_distances must be > 0");
    for (const auto& p : grid.profiles) validate(p);
}

SweepResult sweep(const SweepGrid& grid, const RadioParams& radio,
                  const ScenarioParams& base_scenario, Engine engine,
                  const SimOptions& sim) {
    validate_grid(grid);
    validate(radio);
    validate(base_scenario);

    SweepResult result;
    result.provenance.base.radio = radio;
    result.provenance.base.scenario = base_scenario;
    result.provenance.base.profile = grid.profiles.front();
    result.provenance.base.fading_mode = sim.fading;
    result.provenance.grid = grid;
    result.provenance.engine = engine;
    result.provenance.sim = sim;

    result.rows.reserve(grid.densities.size() * grid.hop_distances.size() *
                        grid.profiles.size());
    std::uint64_t index = 0;
    for (double rho : grid.densities)
        for (double r : grid.hop_distances)
            for (const auto& profile : grid.profiles)
                result.rows.push_back(evaluate_row(rho, r, profile, radio,
                                                   base_scenario, engine, sim,
                                                   index++));
    return result;
}

OptimalHop optimal_hop_distance(double density_per_m,
                                const ServiceProfile& profile,
                                const RadioParams& radio,
                                const ScenarioParams& base_scenario,
                                double r_min, double r_max, double step) {
    require(r_min > 0.0 && r_min < r_max,
            "optimal_hop_distance: need 0 < r_min < r_max");
    require(step > 0.0, "optimal_hop_distance: step must be > 0");
    validate(profile);
    validate(radio);

    ScenarioParams scenario = base_scenario;
    scenario.density_per_m = density_per_m;

    OptimalHop best;
    best.quality = -std::numeric_limits<double>::infinity();
    bool first = true;
    for (double r : linear_grid(r_min, r_max, step)) {
        scenario.hop_distance_m = r;
        double q = assess_link(scenario, radio, profile).quality;
        // strict improvement only: ties keep the smallest hop distance
        if (first || q > best.quality) {
            best.r_m = r;
            best.quality = q;
            first = false;
        }
    }
    return best;
}

SweepResult figure_data(int figure_id, const RadioParams& radio,
                        const ScenarioParams& base_scenario, Engine engine,
                        const SimOptions& sim) {
    const ServiceProfile balanced{0.5, 0.5};
    SweepGrid grid;
    switch (figure_id) {
        case 2:
            grid.densities = linear_grid(0.05, 0.25, 0.01);
            grid.hop_distances = linear_grid(10.0, 200.0, 5.0);
            grid.profiles = {balanced};
            break;
        case 3:
            grid.densities = {0.07, 0.10, 0.15};
            grid.hop_distances = linear_grid(10.0, 200.0, 1.0);
            grid.profiles = {balanced};
            break;
        case 4:
            grid.densities = linear_grid(0.05, 0.25, 0.01);
            grid.hop_distances = {30.0, 50.0, 80.0};
            grid.profiles = {balanced};
            break;
        case 5:
            grid.densities = {0.07};
            grid.hop_distances = linear_grid(10.0, 200.0, 1.0);
            grid.profiles = {{0.1, 0.9}, {0.5, 0.5}, {0.9, 0.1}};
            break;
        default:
            throw std::invalid_argument("unknown figure id " +
                                        std::to_string(figure_id) +
                                        " (expected 2, 3, 4 or 5)");
    }
    return sweep(grid, radio, base_scenario, engine, sim);
}

std::vector<double> linear_grid(double lo, double hi, double step) {
    require(step > 0.0, "linear_grid: step must be > 0");
    require(hi >= lo, "linear_grid: hi must be >= lo");
    // tolerance soaks up accumulated rounding so hi itself stays included
    long count = static_cast<long>(std::floor((hi - lo) / step + 1e-6)) + 1;
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(count));
    for (long i = 0; i < count; ++i) out.push_back(lo + i * step);
    return out;
}

std::uint64_t derive_row_seed(std::uint64_t seed, std::uint64_t row_index) {
    std::uint64_t z = seed ^ (0xD1B54A32D192ED03ull * (row_index + 1));
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

} // namespace v2vq
