#include <doctest.h>

#include <cmath>
#include <numeric>

#include "kinspread/config.hpp"
#include "kinspread/tables.hpp"
#include "kinspread/world.hpp"
#include "test_util.hpp"

using namespace kinspread;
using kinspread::test::bundled_config;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("cluster radius closed form") {
    CHECK(cluster_radius(1000.0, kPi, 1.0) == doctest::Approx(1.0));
    // Official all-India area; hand evaluation of sqrt(A / (pi C)).
    CHECK(cluster_radius(1.35e9, 3287263.0, 29918.0) ==
          doctest::Approx(5.9140).epsilon(1e-3));
    CHECK_THROWS_AS(cluster_radius(-1.0, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(cluster_radius(1.0, 0.0, 1.0), std::invalid_argument);
}

TEST_CASE("cluster radius is exactly independent of population") {
    RngStream rng(3, 0, 0, Draw::Generic);
    for (int i = 0; i < 200; ++i) {
        const double p = rng.uniform(1.0, 1e10);
        const double a = rng.uniform(1.0, 1e7);
        const double c = rng.uniform(1.0, 1e5);
        const double k = rng.uniform(0.1, 100.0);
        CHECK(cluster_radius(p, a, c) == cluster_radius(k * p, a, c));
    }
}

TEST_CASE("quota allocation") {
    using Row = std::pair<std::string, double>;
    SUBCASE("equal populations both get the cap") {
        const std::vector<Row> pops{{"a", 5.0}, {"b", 5.0}};
        const auto quotas = allocate_clusters(pops, 10);
        CHECK(quotas == std::vector<int>{10, 10});
    }
    SUBCASE("small states get at least one cluster") {
        const std::vector<Row> pops{{"big", 1e6}, {"tiny", 1.0}};
        CHECK(allocate_clusters(pops, 100) == std::vector<int>{100, 1});
    }
    SUBCASE("empty table is rejected") {
        CHECK_THROWS_AS(allocate_clusters({}, 10), std::invalid_argument);
    }
    SUBCASE("bundled populations reproduce the bundled quota table") {
        const auto records = load_states_csv(test::data_dir() / "states.csv");
        std::vector<Row> pops;
        for (const auto& r : records) pops.emplace_back(r.name, r.population);
        const auto quotas = allocate_clusters(pops, 5000);
        int total = 0;
        for (std::size_t i = 0; i < records.size(); ++i) {
            CHECK(quotas[i] == records[i].cluster_quota);
            total += quotas[i];
        }
        CHECK(total == 29918);
    }
}

TEST_CASE("bundled state table totals") {
    const auto records = load_states_csv(test::data_dir() / "states.csv");
    int quota = 0, infected = 0;
    int up = -1, kerala = -1, maharashtra = -1;
    for (std::size_t i = 0; i < records.size(); ++i) {
        quota += records[i].cluster_quota;
        infected += records[i].initial_infected;
        if (records[i].name == "Uttar Pradesh") up = static_cast<int>(i);
        if (records[i].name == "Kerala") kerala = static_cast<int>(i);
        if (records[i].name == "Maharashtra") maharashtra = static_cast<int>(i);
    }
    CHECK(quota == 29918);
    CHECK(infected == 258);
    CHECK(records[up].cluster_quota == 5000);
    CHECK(records[kerala].cluster_quota == 852);
    CHECK(records[maharashtra].cluster_quota == 2845);
}

TEST_CASE("transmission probability") {
    AgeRiskTable risk;
    SUBCASE("all-ones weights give the deterministic limit") {
        risk.weights = {1.0, 1.0, 1.0};
        CHECK(transmission_probability(std::vector<double>{0.2, 0.3, 0.5}, risk,
                                       1.0) == doctest::Approx(1.0));
    }
    SUBCASE("single bin") {
        risk.weights = {0.5};
        CHECK(transmission_probability(std::vector<double>{1.0}, risk, 1.0) ==
              doctest::Approx(0.5));
    }
    SUBCASE("dot product") {
        risk.weights = {1.0, 0.4};
        CHECK(transmission_probability(std::vector<double>{0.3, 0.7}, risk, 1.0) ==
              doctest::Approx(0.58));
    }
    SUBCASE("bin mismatch is rejected") {
        risk.weights = {1.0, 0.4};
        CHECK_THROWS_AS(
            transmission_probability(std::vector<double>{1.0}, risk, 1.0),
            std::invalid_argument);
    }
    SUBCASE("monotone in every weight and in base") {
        const std::vector<double> f{0.25, 0.5, 0.25};
        risk.weights = {0.2, 0.6, 0.9};
        const double base_val = transmission_probability(f, risk, 0.5);
        CHECK(transmission_probability(f, risk, 0.6) >= base_val);
        for (std::size_t i = 0; i < risk.weights.size(); ++i) {
            AgeRiskTable bumped = risk;
            bumped.weights[i] += 0.05;
            CHECK(transmission_probability(f, bumped, 0.5) >= base_val);
        }
    }
}

TEST_CASE("age risk table normalizes to a unit peak") {
    const auto risk = load_age_risk_csv(test::data_dir() / "age_risk.csv");
    const double peak = *std::max_element(risk.weights.begin(), risk.weights.end());
    CHECK(peak == doctest::Approx(1.0));
    for (double w : risk.weights) {
        CHECK(w >= 0.0);
        CHECK(w <= 1.0);
    }
}

TEST_CASE("seeded world matches the bundled tables") {
    const auto config = bundled_config();
    const auto loaded = load_inputs(config);
    const World world =
        seed_world(loaded.inputs.records, *loaded.inputs.regions,
                   loaded.inputs.constants, loaded.inputs.risk, config.policy(),
                   config.seed);
    CHECK(world.clusters.size() == 29918);
    CHECK(world.infected_count() == 258);

    std::vector<int> per_state_count(loaded.inputs.records.size(), 0);
    std::vector<int> per_state_infected(loaded.inputs.records.size(), 0);
    for (const Cluster& c : world.clusters) {
        ++per_state_count[c.home_state];
        per_state_infected[c.home_state] += c.infected();
        const Region& region =
            loaded.inputs.regions->at(
                static_cast<std::size_t>(loaded.inputs.regions->find(
                    loaded.inputs.records[c.home_state].name)));
        REQUIRE(region.contains(c.position));
    }
    for (std::size_t s = 0; s < loaded.inputs.records.size(); ++s) {
        CHECK(per_state_count[s] == loaded.inputs.records[s].cluster_quota);
        CHECK(per_state_infected[s] == loaded.inputs.records[s].initial_infected);
        if (loaded.inputs.records[s].name == "Goa") {
            CHECK(per_state_count[s] == 45);
            CHECK(per_state_infected[s] == 0);
        }
    }
}

TEST_CASE("seeding is bit-exact for a fixed seed") {
    const auto config = bundled_config();
    const auto loaded = load_inputs(config);
    const auto make = [&] {
        return seed_world(loaded.inputs.records, *loaded.inputs.regions,
                          loaded.inputs.constants, loaded.inputs.risk,
                          config.policy(), 1234);
    };
    const World a = make();
    const World b = make();
    REQUIRE(a.clusters.size() == b.clusters.size());
    for (std::size_t i = 0; i < a.clusters.size(); ++i) {
        CHECK(a.clusters[i].position.x == b.clusters[i].position.x);
        CHECK(a.clusters[i].position.y == b.clusters[i].position.y);
        CHECK(a.clusters[i].status == b.clusters[i].status);
        CHECK(a.clusters[i].migrant == b.clusters[i].migrant);
    }
}

TEST_CASE("minimal one-state world") {
    std::vector<Region> rs;
    rs.push_back(test::square("only", 0, 0, 10));
    const RegionSet regions(std::move(rs));
    StateRecord rec;
    rec.name = "only";
    rec.population = 1000;
    rec.cluster_quota = 1;
    rec.initial_infected = 1;
    rec.move_stddev_km = 1.0;
    rec.age_distribution = {1.0};
    rec.migration_row = {0.0};
    AgeRiskTable risk;
    risk.weights = {1.0};
    const auto constants = make_constants({rec}, 100.0, 2.01);
    const World world = seed_world({rec}, regions, constants, risk, Policy{}, 9);
    REQUIRE(world.clusters.size() == 1);
    CHECK(world.clusters[0].infected());
    CHECK(world.clusters[0].infection_day == 0);
    CHECK(regions.at(0).contains(world.clusters[0].position));
}

TEST_CASE("missing region is rejected with the state name") {
    std::vector<Region> rs;
    rs.push_back(test::square("present", 0, 0, 10));
    const RegionSet regions(std::move(rs));
    StateRecord rec;
    rec.name = "absent";
    rec.population = 10;
    rec.cluster_quota = 1;
    rec.initial_infected = 0;
    rec.move_stddev_km = 1.0;
    rec.age_distribution = {1.0};
    AgeRiskTable risk;
    risk.weights = {1.0};
    const auto constants = make_constants({rec}, 100.0, 2.01);
    CHECK_THROWS_WITH_AS(
        seed_world({rec}, regions, constants, risk, Policy{}, 1),
        doctest::Contains("absent"), std::runtime_error);
}
