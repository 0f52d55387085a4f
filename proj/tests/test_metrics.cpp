#include <doctest.h>

#include "kinspread/metrics.hpp"
#include "test_util.hpp"

using namespace kinspread;

namespace {

std::vector<DailyMetrics> synthetic_series(const std::vector<int>& infected) {
    std::vector<DailyMetrics> series;
    int prev = infected.empty() ? 0 : infected.front();
    for (std::size_t d = 0; d < infected.size(); ++d) {
        DailyMetrics m;
        m.day = static_cast<int>(d);
        m.infected_clusters = infected[d];
        m.new_infections = infected[d] - prev;
        prev = infected[d];
        series.push_back(m);
    }
    return series;
}

}  // namespace

TEST_CASE("daily metrics fields") {
    std::vector<Region> rs;
    rs.push_back(test::square("s", 0, 0, 100));
    const RegionSet regions(std::move(rs));
    const auto rec = test::simple_record("s", 4);
    const auto constants = make_constants({rec}, 1e4, 2.01);

    SUBCASE("all infected, stationary") {
        World world = test::make_world(
            regions, {rec}, constants, Policy{}, 1,
            {test::make_cluster(0, 0, {0, 0}, true, 0),
             test::make_cluster(1, 0, {1, 0}, true, 0)});
        const auto m = daily_metrics(world, 2);
        CHECK(m.high_risk_fraction == doctest::Approx(1.0));
        CHECK(m.mean_move_km == 0.0);
        CHECK(m.new_infections == 0);
    }
    SUBCASE("cluster-count ratio") {
        World world = test::make_world(
            regions, {rec}, constants, Policy{}, 1,
            {test::make_cluster(0, 0, {0, 0}, true, 0),
             test::make_cluster(1, 0, {1, 0}), test::make_cluster(2, 0, {2, 0}),
             test::make_cluster(3, 0, {3, 0})});
        world.clusters[1].last_move_km = 2.0;
        const auto m = daily_metrics(world, 0);
        CHECK(m.infected_clusters == 1);
        CHECK(m.new_infections == 1);
        CHECK(m.high_risk_fraction == doctest::Approx(0.25));
        CHECK(m.mean_move_km == doctest::Approx(0.5));
    }
}

TEST_CASE("day-0 high-risk fraction of the bundled world") {
    // 258 / 29918, a pure cluster ratio.
    CHECK(258.0 / 29918.0 == doctest::Approx(0.008624).epsilon(1e-3));
}

TEST_CASE("plateau detection") {
    SUBCASE("growth stops at day 14") {
        std::vector<int> infected(21, 0);
        for (int d = 0; d <= 13; ++d) infected[d] = 100 + 10 * d;
        for (int d = 14; d <= 20; ++d) infected[d] = infected[13];
        const auto series = synthetic_series(infected);
        CHECK(plateau_day(series, 0.0) == 14);
        SUBCASE("stable under appending zero-growth days") {
            auto extended = infected;
            extended.resize(40, infected.back());
            CHECK(plateau_day(synthetic_series(extended), 0.0) == 14);
        }
    }
    SUBCASE("no growth at all plateaus at the first day") {
        CHECK(plateau_day(synthetic_series({5, 5, 5}), 0.0) == 0);
    }
    SUBCASE("growth on the final day means no plateau") {
        CHECK(plateau_day(synthetic_series({5, 5, 9}), 0.0) == -1);
    }
}

TEST_CASE("compare_runs") {
    SUBCASE("identical series give the zero report") {
        const auto a = synthetic_series({10, 20, 30});
        const auto report = compare_runs(a, a, 0.0);
        for (const auto& row : report.rows) {
            CHECK(row.delta_infected == 0);
            CHECK(row.ratio == doctest::Approx(1.0));
        }
        CHECK(report.final_ratio == doctest::Approx(1.0));
    }
    SUBCASE("realistic-scale final ratio") {
        const auto lockdown = synthetic_series({258, 900, 1000});
        const auto baseline = synthetic_series({258, 4000, 12000});
        const auto report = compare_runs(lockdown, baseline, 0.0);
        CHECK(report.final_ratio == doctest::Approx(12.0));
        CHECK(report.rows.back().delta_infected == 11000);
    }
    SUBCASE("horizon mismatch is rejected") {
        CHECK_THROWS_AS(compare_runs(synthetic_series({1, 2}),
                                     synthetic_series({1, 2, 3}), 0.0),
                        std::invalid_argument);
    }
}

TEST_CASE("csv wire formats") {
    const auto series = synthetic_series({258, 300});
    const std::string csv = metrics_csv(series);
    CHECK(csv.substr(0, csv.find('\n')) ==
          "day,infected_clusters,new_infections,mean_move_km,high_risk_fraction");
    CHECK(csv.find("0,258,0,") != std::string::npos);
    CHECK(csv.find("1,300,42,") != std::string::npos);

    const auto report = compare_runs(series, synthetic_series({258, 516}), 0.0);
    const std::string comparison = comparison_csv(report);
    CHECK(comparison.substr(0, comparison.find('\n')) == "day,delta_infected,ratio");
    CHECK(comparison.find("1,216,1.720000") != std::string::npos);
}

TEST_CASE("snapshot csv statuses") {
    std::vector<Region> rs;
    rs.push_back(test::square("s", 0, 0, 100));
    const RegionSet regions(std::move(rs));
    const auto rec = test::simple_record("s", 3);
    const auto constants = make_constants({rec}, 1e4, 2.01);
    World world = test::make_world(
        regions, {rec}, constants, Policy{}, 1,
        {test::make_cluster(0, 0, {0, 0}, true, 0),
         test::make_cluster(1, 0, {1, 0}, true, 7),
         test::make_cluster(2, 0, {2, 0})});
    world.day = 8;
    const std::string csv = snapshot_csv(world);
    CHECK(csv.find("symptomatic") != std::string::npos);
    CHECK(csv.find("incubating") != std::string::npos);
    CHECK(csv.find("healthy") != std::string::npos);
    CHECK(csv.substr(0, csv.find('\n')) ==
          "day,cluster_id,x_km,y_km,state_name,status,infection_day");
}
