// v2vq command line: evaluate, sweep, optimize, simulate, compare and
// regenerate figure data for the multi-hop V2V link quality model.
//
// Exit codes: 0 success, 2 config/usage error, 3 runtime error
// (IO failure, insufficient simulation data).

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "v2vq/analytic.hpp"
#include "v2vq/config.hpp"
#include "v2vq/export.hpp"
#include "v2vq/mc.hpp"
#include "v2vq/optimize.hpp"
#include "v2vq/params.hpp"
#include "v2vq/version.hpp"

namespace {

using namespace v2vq;

enum class Command { eval, sweep, optimize, simulate, compare, figure };

// Flags shared across subcommands, mirroring one run request.
struct RunManifest {
    Command command = Command::eval;
    std::string config_path;
    std::vector<std::string> overrides;
    std::optional<std::uint64_t> seed;
    std::string output_path;
    std::string format = "csv";

    std::string engine = "analytic";
    long trials = -1; // -1: per-command default
    long max_slots = 1000000;
    int threads = 0;
    std::string fading;
    std::string placement = "poisson";
    double r_min = 10.0, r_max = 200.0, r_step = 1.0;
    std::optional<double> rho_min, rho_max;
    double rho_step = 0.01;
    int figure_id = 0;
};

void add_common(CLI::App* cmd, RunManifest& m) {
    cmd->add_option("--config", m.config_path, "Config file (key = value lines)");
    cmd->add_option("--set", m.overrides,
                    "Override one config key, e.g. --set alpha=0.9 (repeatable, last wins)");
    cmd->add_option("--out", m.output_path, "Write the result to this file");
    cmd->add_option("--format", m.format, "Output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
}

void add_seed(CLI::App* cmd, RunManifest& m) {
    cmd->add_option("--seed", m.seed, "RNG seed (required for Monte Carlo)");
}

void add_sim_knobs(CLI::App* cmd, RunManifest& m) {
    cmd->add_option("--trials", m.trials, "Monte Carlo trials per point");
    cmd->add_option("--max-slots", m.max_slots,
                    "Retransmission cap per hop before a trial is truncated");
    cmd->add_option("--threads", m.threads,
                    "Worker threads (0 = hardware concurrency)");
    cmd->add_option("--fading-mode", m.fading,
                    "Shadowing redraw policy: per_slot or per_hop")
        ->check(CLI::IsMember({"per_slot", "per_hop"}));
    cmd->add_option("--placement", m.placement,
                    "Vehicle layout: poisson or equal_spacing")
        ->check(CLI::IsMember({"poisson", "equal_spacing"}));
}

void add_r_grid(CLI::App* cmd, RunManifest& m) {
    cmd->add_option("--r-min", m.r_min, "Smallest hop distance (m)");
    cmd->add_option("--r-max", m.r_max, "Largest hop distance (m)");
    cmd->add_option("--r-step", m.r_step, "Hop distance step (m)");
}

void add_rho_grid(CLI::App* cmd, RunManifest& m) {
    cmd->add_option("--rho-min", m.rho_min, "Smallest density (per m)");
    cmd->add_option("--rho-max", m.rho_max, "Largest density (per m)");
    cmd->add_option("--rho-step", m.rho_step, "Density step (per m)");
}

Config make_config(const RunManifest& m) {
    Config config =
        m.config_path.empty() ? Config{} : load_config_file(m.config_path);
    for (const auto& assignment : m.overrides)
        apply_override(config, assignment);
    if (!m.fading.empty()) {
        config.fading_mode = fading_mode_from_string(m.fading);
        config.explicit_keys.insert("fading_mode");
    }
    validate_config(config);
    return config;
}

SimOptions make_sim_options(const RunManifest& m, const Config& config,
                            long default_trials) {
    SimOptions options;
    options.trials = m.trials > 0 ? m.trials : default_trials;
    options.seed = m.seed.value_or(0);
    options.max_slots_per_hop = m.max_slots;
    options.threads = m.threads;
    options.fading = config.fading_mode;
    options.placement = m.placement == "equal_spacing"
                            ? PlacementMode::equal_spacing
                            : PlacementMode::poisson;
    return options;
}

Engine parse_engine(const RunManifest& m) {
    return engine_from_string(m.engine);
}

void require_seed(const RunManifest& m, const char* why) {
    if (!m.seed)
        throw ConfigError(std::string("--seed is required ") + why);
}

SweepGrid grid_from_flags(const RunManifest& m, const Config& config) {
    SweepGrid grid;
    if (m.rho_min || m.rho_max) {
        if (!(m.rho_min && m.rho_max))
            throw ConfigError("--rho-min and --rho-max must be given together");
        grid.densities = linear_grid(*m.rho_min, *m.rho_max, m.rho_step);
    } else {
        grid.densities = {config.scenario.density_per_m};
    }
    grid.hop_distances = linear_grid(m.r_min, m.r_max, m.r_step);
    grid.profiles = {config.profile};
    return grid;
}

void emit(const SweepResult& result, const RunManifest& m) {
    std::string body =
        m.format == "json" ? render_json(result) : render_csv(result);
    if (m.output_path.empty())
        std::cout << body;
    else
        write_file(m.output_path, body);
}

void print_default_note(const Config& config) {
    auto defaults = defaulted_keys(config);
    if (defaults.empty()) return;
    std::cout << "# note: documented defaults in effect for:";
    for (const auto& key : defaults) {
        double value = std::strtod(config_value(config, key).c_str(), nullptr);
        std::cout << ' ' << key << '=' << format_sig12(value);
    }
    std::cout << "\n";
}

int cmd_eval(const RunManifest& m) {
    Config config = make_config(m);
    print_default_note(config);
    LinkAssessment a =
        assess_link(config.scenario, config.radio, config.profile);
    double eta = link_margin_db(config.scenario.hop_distance_m, config.radio);
    double p_hop = hop_success_prob(config.scenario.hop_distance_m, config.radio);
    int shape = std::max(1, detail::snap_ceil(config.scenario.density_per_m *
                                              config.scenario.hop_distance_m));
    double erlang_base = erlang_distance_cdf(
        config.radio.coverage_radius_m, shape, config.scenario.density_per_m);

    std::cout << "P           = " << format_sig12(a.connectivity) << "\n";
    std::cout << "T_us        = " << format_sig12(a.delay_us) << "\n";
    std::cout << "D           = " << format_sig12(a.delay_indicator) << "\n";
    std::cout << "Q           = " << format_sig12(a.quality) << "\n";
    std::cout << "hops        = " << a.hop_count << "\n";
    std::cout << "eta_db      = " << format_sig12(eta) << "\n";
    std::cout << "P_hop       = " << format_sig12(p_hop) << "\n";
    std::cout << "erlang_base = " << format_sig12(erlang_base) << "\n";
    if (a.underflow)
        std::cout << "# note: hop success underflowed below 1e-300; delay is +inf\n";

    if (!m.output_path.empty()) {
        SweepGrid grid{{config.scenario.density_per_m},
                       {config.scenario.hop_distance_m},
                       {config.profile}};
        emit(sweep(grid, config.radio, config.scenario, Engine::analytic), m);
    }
    return 0;
}

int cmd_sweep(const RunManifest& m) {
    Config config = make_config(m);
    Engine engine = parse_engine(m);
    if (engine == Engine::montecarlo)
        require_seed(m, "when --engine mc is selected");
    SweepGrid grid = grid_from_flags(m, config);
    SimOptions sim = make_sim_options(m, config, 10000);
    emit(sweep(grid, config.radio, config.scenario, engine, sim), m);
    return 0;
}

int cmd_optimize(const RunManifest& m) {
    Config config = make_config(m);
    OptimalHop best = optimal_hop_distance(
        config.scenario.density_per_m, config.profile, config.radio,
        config.scenario, m.r_min, m.r_max, m.r_step);
    std::cout << "r_star_m = " << format_sig12(best.r_m) << "\n";
    std::cout << "q_star   = " << format_sig12(best.quality) << "\n";
    if (!m.output_path.empty()) {
        SweepGrid grid{{config.scenario.density_per_m},
                       {best.r_m},
                       {config.profile}};
        emit(sweep(grid, config.radio, config.scenario, Engine::analytic), m);
    }
    return 0;
}

int cmd_simulate(const RunManifest& m) {
    Config config = make_config(m);
    require_seed(m, "for simulate");
    SimOptions options = make_sim_options(m, config, 10000);

    EnsembleStats stats;
    bool insufficient = false;
    try {
        stats = run_ensemble(config.scenario, config.radio, config.profile,
                             options);
    } catch (const InsufficientData& e) {
        stats = e.stats();
        insufficient = true;
    }

    std::cout << "trials           = " << stats.trials << "\n";
    std::cout << "connected        = " << stats.connected << "\n";
    std::cout << "truncated        = " << stats.truncated << "\n";
    std::cout << "connectivity_hat = " << format_sig12(stats.connectivity_hat)
              << "\n";
    std::cout << "P_ci_95          = [" << format_sig12(stats.connectivity_ci.lo)
              << ", " << format_sig12(stats.connectivity_ci.hi) << "]\n";
    std::cout << "mean_delay_us    = "
              << (stats.mean_delay_us ? format_sig12(*stats.mean_delay_us)
                                      : "n/a")
              << "\n";
    std::cout << "delay_se_us      = "
              << (stats.delay_se_us ? format_sig12(*stats.delay_se_us) : "n/a")
              << "\n";
    std::cout << "quality_hat      = "
              << (stats.quality_hat ? format_sig12(*stats.quality_hat) : "n/a")
              << "\n";
    if (insufficient)
        std::cout << "# note: no connected trials; delay statistics undefined\n";

    if (!m.output_path.empty())
        emit(wrap_ensemble(stats, config, options), m);
    return insufficient ? 3 : 0;
}

int cmd_compare(const RunManifest& m) {
    Config config = make_config(m);
    require_seed(m, "for compare");
    SweepGrid grid = grid_from_flags(m, config);
    SimOptions sim = make_sim_options(m, config, 10000);

    SweepResult analytic =
        sweep(grid, config.radio, config.scenario, Engine::analytic);
    SweepResult empirical =
        sweep(grid, config.radio, config.scenario, Engine::montecarlo, sim);

    std::ostringstream os;
    os << "# engines: analytic vs montecarlo (trials = " << sim.trials
       << ", seed = " << sim.seed << ")\n";
    os << "rho,r_m,alpha,beta,P_ana,P_mc,P_ci_lo,P_ci_hi,dP,"
          "T_ana_us,T_mc_us,T_se_us,dT_us,Q_ana,Q_mc,dQ,note\n";
    for (std::size_t i = 0; i < analytic.rows.size(); ++i) {
        const SweepRow& a = analytic.rows[i];
        const SweepRow& e = empirical.rows[i];
        os << format_sig12(a.rho) << ',' << format_sig12(a.r_m) << ','
           << format_sig12(a.alpha) << ',' << format_sig12(a.beta) << ','
           << format_sig12(a.P) << ',' << format_sig12(e.P) << ','
           << format_sig12(e.P_ci_lo) << ',' << format_sig12(e.P_ci_hi) << ','
           << format_sig12(e.P - a.P) << ',' << format_sig12(a.T_us) << ','
           << format_sig12(e.T_us) << ',' << format_sig12(e.T_se_us) << ','
           << format_sig12(e.T_us - a.T_us) << ',' << format_sig12(a.Q) << ','
           << format_sig12(e.Q) << ',' << format_sig12(e.Q - a.Q) << ','
           << (e.error.empty() ? a.error : e.error) << "\n";
    }
    if (m.output_path.empty())
        std::cout << os.str();
    else
        write_file(m.output_path, os.str());
    return 0;
}

int cmd_figure(const RunManifest& m) {
    Config config = make_config(m);
    Engine engine = parse_engine(m);
    SimOptions sim = make_sim_options(m, config, 2000);
    if (engine == Engine::montecarlo) {
        require_seed(m, "when --engine mc is selected");
        std::cerr << "warning: Monte Carlo over a full figure grid runs "
                  << sim.trials << " trials per point; expect minutes, "
                  << "not seconds\n";
    }
    emit(figure_data(m.figure_id, config.radio, config.scenario, engine, sim),
         m);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"multi-hop V2V link quality: closed-form model, Monte Carlo "
                 "cross-check, hop-distance optimizer"};
    app.set_version_flag("--version", V2VQ_VERSION_STRING);
    app.require_subcommand(1);

    RunManifest m;

    CLI::App* eval = app.add_subcommand(
        "eval", "Evaluate P, T, D, Q* at one parameter point");
    add_common(eval, m);

    CLI::App* sweep = app.add_subcommand(
        "sweep", "Evaluate a density x hop-distance grid");
    add_common(sweep, m);
    add_seed(sweep, m);
    add_r_grid(sweep, m);
    add_rho_grid(sweep, m);
    add_sim_knobs(sweep, m);
    sweep->add_option("--engine", m.engine, "analytic or mc")
        ->check(CLI::IsMember({"analytic", "mc"}));

    CLI::App* optimize = app.add_subcommand(
        "optimize", "Find the hop distance maximizing Q*");
    add_common(optimize, m);
    add_r_grid(optimize, m);

    CLI::App* simulate = app.add_subcommand(
        "simulate", "Monte Carlo ensemble at one parameter point");
    add_common(simulate, m);
    add_seed(simulate, m);
    add_sim_knobs(simulate, m);

    CLI::App* compare = app.add_subcommand(
        "compare", "Analytic vs Monte Carlo side by side on a grid");
    add_common(compare, m);
    add_seed(compare, m);
    add_r_grid(compare, m);
    add_rho_grid(compare, m);
    add_sim_knobs(compare, m);

    CLI::App* figure = app.add_subcommand(
        "figure", "Regenerate the data grid behind one reference figure");
    add_common(figure, m);
    add_seed(figure, m);
    add_sim_knobs(figure, m);
    figure->add_option("--figure", m.figure_id, "Figure id: 2, 3, 4 or 5")
        ->required();
    figure->add_option("--engine", m.engine, "analytic or mc")
        ->check(CLI::IsMember({"analytic", "mc"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (eval->parsed()) return cmd_eval(m);
        if (sweep->parsed()) return cmd_sweep(m);
        if (optimize->parsed()) return cmd_optimize(m);
        if (simulate->parsed()) return cmd_simulate(m);
        if (compare->parsed()) return cmd_compare(m);
        if (figure->parsed()) return cmd_figure(m);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
