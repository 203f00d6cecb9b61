#include "doctest.h"

#include <cmath>
#include <random>

#include "v2vq/config.hpp"
#include "v2vq/params.hpp"

using namespace v2vq;

TEST_CASE("noise power examples") {
    RadioParams radio; // defaults: -174 dBm/Hz over 200 MHz
    CHECK(noise_power_dbm(radio) == doctest::Approx(-90.98970004336019).epsilon(1e-12));

    radio.bandwidth_hz = 1.0;
    CHECK(noise_power_dbm(radio) == -174.0);

    radio.noise_density_dbm_hz = 0.0;
    radio.bandwidth_hz = 10.0;
    CHECK(noise_power_dbm(radio) == doctest::Approx(10.0).epsilon(1e-15));
}

TEST_CASE("profile validation") {
    CHECK_NOTHROW(validate(ServiceProfile{0.5, 0.5}));
    CHECK_NOTHROW(validate(ServiceProfile{0.0, 1.0}));
    CHECK_NOTHROW(validate(ServiceProfile{1.0, 0.0}));

    ServiceProfile bad{0.7, 0.7};
    auto issues = check(bad);
    REQUIRE(issues.size() == 1);
    CHECK(issues[0].field == "alpha");
    CHECK_THROWS_AS(validate(bad), ValidationError);

    ServiceProfile out_of_range{-0.2, 1.2};
    CHECK(check(out_of_range).size() >= 2);
}

TEST_CASE("scenario validation names offending fields") {
    ScenarioParams scenario;
    scenario.density_per_m = -0.1;
    auto issues = check(scenario);
    REQUIRE(issues.size() == 1);
    CHECK(issues[0].field == "density_per_m");

    scenario.span_m = 0.0;
    scenario.slot_time_us = -1.0;
    issues = check(scenario);
    CHECK(issues.size() == 3);

    try {
        validate(scenario);
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        std::string msg = e.what();
        CHECK(msg.find("density_per_m") != std::string::npos);
        CHECK(msg.find("span_m") != std::string::npos);
        CHECK(msg.find("slot_time_us") != std::string::npos);
    }
}

TEST_CASE("radio validation") {
    RadioParams radio;
    CHECK_NOTHROW(validate(radio));
    radio.bandwidth_hz = 0.0;
    CHECK(check(radio).size() == 1);
    radio.shadow_sigma_db = -5.0;
    radio.coverage_radius_m = 0.0;
    CHECK(check(radio).size() == 3);
}

TEST_CASE("validate is idempotent") {
    ScenarioParams scenario;
    const ScenarioParams& once = validate(scenario);
    const ScenarioParams& twice = validate(once);
    CHECK(&twice == &scenario);
    CHECK(twice.span_m == scenario.span_m);
}

TEST_CASE("config parsing basics") {
    Config c = parse_config_text("# comment\n"
                                 "\n"
                                 "alpha = 0.25\n"
                                 "beta = 0.75\n"
                                 "  hop_distance_m =  40  \n");
    CHECK(c.profile.alpha == 0.25);
    CHECK(c.profile.beta == 0.75);
    CHECK(c.scenario.hop_distance_m == 40.0);
    // only whole-line comments exist; trailing text breaks the value parse
    CHECK_THROWS_AS(parse_config_text("hop_distance_m = 40 # nope\n"),
                    ConfigError);
}

TEST_CASE("config parsing rejects junk") {
    CHECK_THROWS_AS(parse_config_text("bogus_key = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("alpha = not_a_number\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("alpha 0.5\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("alpha = \n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("fading_mode = sometimes\n"), ConfigError);
}

TEST_CASE("config defaults and explicit key tracking") {
    Config c = parse_config_text("snr_threshold_db = 12\n");
    CHECK(c.radio.snr_threshold_db == 12.0);
    CHECK(c.radio.tx_power_dbm == 30.0); // untouched default
    CHECK(c.explicit_keys.count("snr_threshold_db") == 1);
    auto defaults = defaulted_keys(c);
    CHECK(defaults.size() == config_keys().size() - 1);

    apply_override(c, "alpha=0.9");
    apply_override(c, "beta=0.1");
    apply_override(c, "alpha=0.8"); // last wins
    CHECK(c.profile.alpha == 0.8);
    CHECK_THROWS_AS(apply_override(c, "nope=1"), ConfigError);
    CHECK_THROWS_AS(apply_override(c, "alpha"), ConfigError);
}

TEST_CASE("config fading mode switch") {
    Config c = parse_config_text("fading_mode = per_hop\n");
    CHECK(c.fading_mode == FadingMode::per_hop);
    CHECK(to_string(c.fading_mode) == "per_hop");
    CHECK(fading_mode_from_string("per_slot") == FadingMode::per_slot);
}

TEST_CASE("config round-trip is field-exact") {
    Config c;
    c.radio.tx_power_dbm = 23.456789012345678;
    c.scenario.density_per_m = 0.1 + 1e-17;
    c.profile.alpha = 1.0 / 3.0;
    c.profile.beta = 2.0 / 3.0;
    c.fading_mode = FadingMode::per_hop;

    Config back = parse_config_text(serialize_config(c));
    for (const auto& key : config_keys())
        CHECK(config_value(back, key) == config_value(c, key));
    CHECK(back.fading_mode == c.fading_mode);
}

TEST_CASE("config round-trip fuzz") {
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    for (int iter = 0; iter < 100; ++iter) {
        Config c;
        c.radio.tx_power_dbm = uni(rng) * 100.0;
        c.radio.noise_density_dbm_hz = -174.0 + uni(rng);
        c.radio.bandwidth_hz = std::exp(uni(rng) * 20.0);
        c.radio.snr_threshold_db = uni(rng) * 30.0;
        c.radio.shadow_sigma_db = 0.1 + std::fabs(uni(rng)) * 12.0;
        c.radio.coverage_radius_m = 1.0 + std::fabs(uni(rng)) * 500.0;
        c.scenario.density_per_m = std::exp(uni(rng) * 5.0) * 0.1;
        c.scenario.span_m = 1.0 + std::fabs(uni(rng)) * 5000.0;
        c.scenario.hop_distance_m = 0.5 + std::fabs(uni(rng)) * 300.0;
        c.scenario.slot_time_us = 1.0 + std::fabs(uni(rng)) * 100.0;
        c.scenario.proc_time_us = std::fabs(uni(rng)) * 100.0;
        c.scenario.max_delay_us = 100.0 + std::fabs(uni(rng)) * 1e6;
        double a = 0.5 + 0.5 * uni(rng);
        c.profile.alpha = a;
        c.profile.beta = 1.0 - a;

        Config back = parse_config_text(serialize_config(c));
        CHECK(back.radio.tx_power_dbm == c.radio.tx_power_dbm);
        CHECK(back.radio.noise_density_dbm_hz == c.radio.noise_density_dbm_hz);
        CHECK(back.radio.bandwidth_hz == c.radio.bandwidth_hz);
        CHECK(back.radio.snr_threshold_db == c.radio.snr_threshold_db);
        CHECK(back.radio.shadow_sigma_db == c.radio.shadow_sigma_db);
        CHECK(back.radio.coverage_radius_m == c.radio.coverage_radius_m);
        CHECK(back.scenario.density_per_m == c.scenario.density_per_m);
        CHECK(back.scenario.span_m == c.scenario.span_m);
        CHECK(back.scenario.hop_distance_m == c.scenario.hop_distance_m);
        CHECK(back.scenario.slot_time_us == c.scenario.slot_time_us);
        CHECK(back.scenario.proc_time_us == c.scenario.proc_time_us);
        CHECK(back.scenario.max_delay_us == c.scenario.max_delay_us);
        CHECK(back.profile.alpha == c.profile.alpha);
        CHECK(back.profile.beta == c.profile.beta);
    }
}

TEST_CASE("validate_config aggregates issues across structs") {
    Config c;
    c.radio.bandwidth_hz = -1.0;
    c.scenario.span_m = -2.0;
    c.profile.alpha = 0.9;
    c.profile.beta = 0.9;
    try {
        validate_config(c);
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(e.issues().size() >= 3);
    }
}
