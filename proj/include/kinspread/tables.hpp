#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace kinspread {

// One state/UT row of the input tables.
struct StateRecord {
    std::string name;
    double population = 0.0;
    int cluster_quota = 0;
    int initial_infected = 0;
    double move_stddev_km = 0.0;
    std::vector<double> age_distribution;  // fractions per decadal bin, sum 1
    std::vector<double> migration_row;     // destination weights, sum <= 1

    // Fraction of this state's clusters prone to inter-state migration.
    double out_weight() const;
};

struct AgeRiskTable {
    std::vector<std::string> bins;
    std::vector<double> weights;  // in [0,1], max bin 1 after normalization
};

struct ModelConstants {
    double total_population = 0.0;
    double total_area_km2 = 0.0;
    int total_clusters = 0;
    double radius_km = 0.0;
    double contact_coefficient = 2.01;
    double persons_per_cluster = 0.0;

    double contact_threshold_km() const { return contact_coefficient * radius_km; }
};

// R = sqrt((1/pi) * (P/C) * (A/P)) = sqrt(A / (pi * C)). Computed in the
// reduced form so the result is exactly independent of P.
double cluster_radius(double total_population, double total_area_km2,
                      double total_clusters);

// Proportional quota allocation: the most populous state gets exactly `cap`,
// every other state round(cap * pop / pop_max), minimum 1.
std::vector<int> allocate_clusters(
    std::span<const std::pair<std::string, double>> state_populations, int cap);

// base * dot(age_distribution, weights), clamped to [0, 1].
double transmission_probability(std::span<const double> age_distribution,
                                const AgeRiskTable& risk, double base);

ModelConstants make_constants(const std::vector<StateRecord>& records,
                              double total_area_km2, double contact_coefficient,
                              double radius_override_km = 0.0);

std::vector<StateRecord> load_states_csv(const std::filesystem::path& path);

// Fills migration_row on each record; the matrix header must list exactly
// the states of `records`, in any order.
void load_migration_csv(const std::filesystem::path& path,
                        std::vector<StateRecord>& records);

AgeRiskTable load_age_risk_csv(const std::filesystem::path& path);

}  // namespace kinspread
