#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "otfs/config.hpp"

using namespace otfs;

TEST_CASE("defaults match the documented operating point") {
    const SweepConfig cfg = default_sweep_config();
    CHECK(cfg.scenario.frame.M == 32);
    CHECK(cfg.scenario.frame.N == 16);
    CHECK(cfg.scenario.frame.delta_f_hz == doctest::Approx(3750.0));
    CHECK(cfg.scenario.frame.carrier_hz == doctest::Approx(4.0e9));
    CHECK(cfg.scenario.alloc.alpha_c == doctest::Approx(0.1));
    CHECK(cfg.scenario.alloc.alpha_e == doctest::Approx(0.9));
    CHECK(cfg.scenario.sr_t1.omega_total == doctest::Approx(0.5));
    CHECK(cfg.scenario.sc_t1.paths.size() == 3);
    CHECK(cfg.pr_over_ps == doctest::Approx(0.5));
    CHECK(cfg.snr_grid_db.size() == 21);
    CHECK(cfg.snr_grid_db.front() == 0.0);
    CHECK(cfg.snr_grid_db.back() == 40.0);
    CHECK(cfg.scenario.strict_eq19);
    CHECK_NOTHROW(check_scenario(scenario_at(cfg, 10.0, Scheme::proposed)));
}

TEST_CASE("partial configs override only what they mention") {
    const SweepConfig cfg = parse_sweep_config(
        R"({"rates": {"r_xc": 0.6, "r_xe": 0.6, "r_xbarc": 0.3},
            "snr": {"grid_db": [5, 15]},
            "strict_eq19": false})",
        "inline");
    CHECK(cfg.scenario.rates.r_xc == doctest::Approx(0.6));
    CHECK(cfg.scenario.rates.r_xbarc == doctest::Approx(0.3));
    CHECK(cfg.scenario.frame.M == 32); // untouched default
    CHECK_FALSE(cfg.scenario.strict_eq19);
    REQUIRE(cfg.snr_grid_db.size() == 2);
    CHECK(cfg.snr_grid_db[1] == doctest::Approx(15.0));
}

TEST_CASE("parse errors carry line/column diagnostics") {
    const std::string bad = "{\n  \"frame\": {\n    \"M\": oops\n  }\n}";
    try {
        parse_sweep_config(bad, "inline");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("inline:3") != std::string::npos);
    }
}

TEST_CASE("field errors name the offending field") {
    try {
        parse_sweep_config(R"({"links": {"sc_t1": {"omega": "high"}}})", "inline");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("links.sc_t1.omega") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_sweep_config(R"({"schemes": []})", "inline"), ConfigError);
    CHECK_THROWS_AS(parse_sweep_config(R"({"schemes": ["tdma"]})", "inline"), ConfigError);
    CHECK_THROWS_AS(parse_sweep_config(R"({"snr": {"grid_db": []}})", "inline"), ConfigError);
    CHECK_THROWS_AS(parse_sweep_config(R"({"payload": "ook"})", "inline"), ConfigError);
    // scenario invariants surface at load time too
    CHECK_THROWS_AS(
        parse_sweep_config(R"({"links": {"sr_t1": {"omega": 3.0}}})", "inline"),
        ConfigError);
    CHECK_THROWS_AS(
        parse_sweep_config(R"({"links": {"sc_t1": {"doppler_taps": [99], "delay_taps": [0]}}})",
                           "inline"),
        ConfigError);
}

TEST_CASE("mismatched tap arrays are rejected") {
    CHECK_THROWS_AS(
        parse_sweep_config(
            R"({"links": {"sc_t1": {"doppler_taps": [0, 1], "delay_taps": [0]}}})", "inline"),
        ConfigError);
}

TEST_CASE("scenario_at applies the dB grid and power ratio") {
    const SweepConfig cfg = default_sweep_config();
    const Scenario s = scenario_at(cfg, 20.0, Scheme::oma);
    CHECK(s.rho_s == doctest::Approx(100.0));
    CHECK(s.rho_r == doctest::Approx(50.0));
    CHECK(s.scheme == Scheme::oma);
}

TEST_CASE("load_sweep_config reads files and reports missing ones") {
    const char* path = "test_config_roundtrip.json";
    {
        std::ofstream out(path);
        out << R"({"mc": {"trials": 123, "master_seed": 77}})";
    }
    const SweepConfig cfg = load_sweep_config(path);
    CHECK(cfg.mc.trials == 123);
    CHECK(cfg.mc.master_seed == 77);
    std::remove(path);
    CHECK_THROWS_AS(load_sweep_config("no_such_file.json"), ConfigError);
}
