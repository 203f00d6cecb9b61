#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "v2vq/analytic.hpp"
#include "v2vq/config.hpp"
#include "v2vq/mc.hpp"
#include "v2vq/params.hpp"

namespace v2vq {

enum class Engine { analytic, montecarlo };

std::string to_string(Engine engine);
Engine engine_from_string(const std::string& text);

// Cartesian evaluation grid. Ordered lists must be strictly increasing.
struct SweepGrid {
    std::vector<double> densities;
    std::vector<double> hop_distances;
    std::vector<ServiceProfile> profiles;
};

void validate_grid(const SweepGrid& grid);

// One grid point result. Monte Carlo rows additionally carry the CI and
// standard-error columns; a non-empty error marks a failed row (its numeric
// fields may be NaN).
struct SweepRow {
    double rho = 0.0;
    double r_m = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
    double P = 0.0;
    double T_us = 0.0;
    double D = 0.0;
    double Q = 0.0;
    double P_ci_lo = 0.0;
    double P_ci_hi = 0.0;
    double T_se_us = 0.0;
    long trials = 0;
    std::string error;
};

// Everything needed to regenerate the result: full parameter snapshot, the
// grid itself, engine choice and simulation knobs.
struct Provenance {
    Config base;
    SweepGrid grid;
    Engine engine = Engine::analytic;
    SimOptions sim;
    // true when sim.seed fed run_ensemble directly (single-point simulate);
    // false when rows derive their seeds from sim.seed and the row index
    bool direct_seed = false;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    Provenance provenance;
};

// Evaluate every grid point, rows in lexicographic (density, hop distance,
// profile) order. Engine failures are recorded per-row, never thrown.
// Monte Carlo rows draw their seeds from sim.seed and the row index.
SweepResult sweep(const SweepGrid& grid, const RadioParams& radio,
                  const ScenarioParams& base_scenario, Engine engine,
                  const SimOptions& sim = {});

struct OptimalHop {
    double r_m = 0.0;
    double quality = 0.0;
};

// Exhaustive scan of Q* over {r_min, r_min+step, ..., r_max}; ties resolve
// to the smallest hop distance. Grid search on purpose: the ceiling terms
// make Q* discontinuous, so smooth optimizers are unsound here.
OptimalHop optimal_hop_distance(double density_per_m,
                                const ServiceProfile& profile,
                                const RadioParams& radio,
                                const ScenarioParams& base_scenario,
                                double r_min, double r_max, double step);

// The exact grids behind the reference figures (2: density x distance
// surface; 3: quality vs distance per density; 4: quality vs density per
// distance; 5: quality vs distance per profile).
SweepResult figure_data(int figure_id, const RadioParams& radio,
                        const ScenarioParams& base_scenario,
                        Engine engine = Engine::analytic,
                        const SimOptions& sim = {});

// {lo, lo+step, ...} up to hi inclusive within a small relative tolerance.
std::vector<double> linear_grid(double lo, double hi, double step);

// Substream seed for one sweep row, derived from the base seed.
std::uint64_t derive_row_seed(std::uint64_t seed, std::uint64_t row_index);

} // namespace v2vq
