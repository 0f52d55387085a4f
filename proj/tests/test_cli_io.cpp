#include <doctest.h>

#include <fstream>

#include "kinspread/config.hpp"
#include "kinspread/engine.hpp"
#include "kinspread/metrics.hpp"
#include "test_util.hpp"

using namespace kinspread;
using kinspread::test::bundled_config;

TEST_CASE("bundled config parses and validates") {
    const ScenarioConfig config = bundled_config();
    CHECK(config.horizon_days == 60);
    REQUIRE(config.lockdown_day.has_value());
    CHECK(*config.lockdown_day == 5);
    CHECK(config.restriction_factor == doctest::Approx(50.0));
    CHECK(config.incubation_days == 5);
    CHECK(config.contact_coefficient == doctest::Approx(2.01));
    CHECK_NOTHROW(config.validate());
}

TEST_CASE("config validation rejects bad values") {
    ScenarioConfig config = bundled_config();
    SUBCASE("lockdown after horizon") {
        config.lockdown_day = 90;
        CHECK_THROWS_AS(config.validate(), std::runtime_error);
    }
    SUBCASE("restriction factor below one") {
        config.restriction_factor = 0.5;
        CHECK_THROWS_AS(config.validate(), std::runtime_error);
    }
    SUBCASE("negative migration rate") {
        config.migration_rate = -0.1;
        CHECK_THROWS_AS(config.validate(), std::runtime_error);
    }
}

TEST_CASE("missing input file fails naming the path") {
    ScenarioConfig config = bundled_config();
    config.migration_csv = "/nonexistent/migration.csv";
    CHECK_THROWS_WITH_AS(load_inputs(config),
                         doctest::Contains("/nonexistent/migration.csv"),
                         std::runtime_error);
}

TEST_CASE("bundled data passes every validation check") {
    const auto checks = validate_data(bundled_config());
    REQUIRE(!checks.empty());
    for (const auto& c : checks) {
        INFO(c.name, ": ", c.detail);
        CHECK(c.passed);
    }
}

TEST_CASE("corrupt inputs produce named failures") {
    namespace fs = std::filesystem;
    const fs::path tmp = fs::temp_directory_path() / "kinspread_bad_inputs";
    fs::create_directories(tmp);
    ScenarioConfig config = bundled_config();

    SUBCASE("age distribution summing to 0.9") {
        const fs::path bad = tmp / "states_bad.csv";
        std::ofstream(bad) << "name,population,cluster_quota,initial_infected,"
                              "move_stddev_km,age_bin_fractions\n"
                           << "Kerala,1000,10,1,9.0,0.5;0.4\n";
        config.states_csv = bad;
        const auto checks = validate_data(config);
        bool found = false;
        for (const auto& c : checks)
            if (!c.passed && c.detail.find("Kerala") != std::string::npos)
                found = true;
        CHECK(found);
    }
    SUBCASE("two-vertex polygon") {
        const fs::path bad = tmp / "geometry_bad.geojson";
        std::ofstream(bad)
            << R"({"type":"FeatureCollection","features":[{"type":"Feature",)"
            << R"("properties":{"name":"Broken"},"geometry":{"type":"Polygon",)"
            << R"("coordinates":[[[0,0],[1,1]]]}}]})";
        config.geometry = bad;
        const auto checks = validate_data(config);
        bool found = false;
        for (const auto& c : checks)
            if (!c.passed && c.detail.find("Broken") != std::string::npos)
                found = true;
        CHECK(found);
    }
}

TEST_CASE("horizon-zero run emits only the day-0 row") {
    ScenarioConfig config = bundled_config();
    config.horizon_days = 0;
    config.lockdown_day.reset();
    config.snapshot_days = {};
    config.validate();
    const auto loaded = load_inputs(config);
    const RunResult result = run_scenario(config, loaded.inputs);
    REQUIRE(result.series.size() == 1);
    CHECK(result.series[0].day == 0);
    CHECK(result.series[0].infected_clusters == 258);
    CHECK(result.series[0].new_infections == 0);
}

TEST_CASE("reruns are byte-identical") {
    ScenarioConfig config = bundled_config();
    config.horizon_days = 3;
    config.lockdown_day = 1;
    config.snapshot_days = {2};
    const auto loaded = load_inputs(config);
    const RunResult a = run_scenario(config, loaded.inputs);
    const RunResult b = run_scenario(config, loaded.inputs);
    CHECK(metrics_csv(a.series) == metrics_csv(b.series));
    REQUIRE(a.snapshots.size() == 1);
    CHECK(a.snapshots.at(2) == b.snapshots.at(2));
}

TEST_CASE("run manifest echoes the config and digests the data") {
    const ScenarioConfig config = bundled_config();
    const std::string manifest = run_manifest(config);
    CHECK(manifest.find("\"seed\"") != std::string::npos);
    CHECK(manifest.find("data_digests") != std::string::npos);
    CHECK(manifest.find("horizon_days") != std::string::npos);
    CHECK(manifest == run_manifest(config));  // deterministic
}
