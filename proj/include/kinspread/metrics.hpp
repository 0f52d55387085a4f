#pragma once

#include <string>
#include <vector>

#include "kinspread/world.hpp"

namespace kinspread {

struct DailyMetrics {
    int day = 0;
    int infected_clusters = 0;
    int new_infections = 0;
    double mean_move_km = 0.0;
    double high_risk_fraction = 0.0;
};

// Observables of the current world; new_infections is the delta against
// previous_infected (0 for the day-0 row).
DailyMetrics daily_metrics(const World& world, int previous_infected);

struct ComparisonRow {
    int day = 0;
    int delta_infected = 0;  // baseline minus lockdown
    double ratio = 1.0;      // baseline over lockdown
};

struct ComparisonReport {
    std::vector<ComparisonRow> rows;
    double final_ratio = 1.0;
    // First day after which lockdown new_infections stay <= epsilon for the
    // remainder of the series; -1 if never.
    int plateau_day = -1;
};

// First day d such that new_infections <= epsilon for every day >= d.
int plateau_day(const std::vector<DailyMetrics>& series, double epsilon);

// Compares a lockdown series against a baseline series of equal horizon.
ComparisonReport compare_runs(const std::vector<DailyMetrics>& lockdown,
                              const std::vector<DailyMetrics>& baseline,
                              double plateau_epsilon);

std::string metrics_csv(const std::vector<DailyMetrics>& series);
std::string comparison_csv(const ComparisonReport& report);
std::string snapshot_csv(const World& world);

}  // namespace kinspread
