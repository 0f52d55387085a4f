#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "kinspread/metrics.hpp"
#include "kinspread/world.hpp"

namespace kinspread {

// Scale applied to the movement distribution for this cluster-day: 1 when
// unrestricted, 1/restriction_factor when lockdown is active or the cluster
// is past incubation. The two restrictions do not compound.
double movement_scale(const Cluster& cluster, int day, const Policy& policy);

// Mean daily movement in km under the active regime.
double movement_regime(const Cluster& cluster, int day, const Policy& policy);

// Distance ~ Normal(mean, stddev) truncated at 0, direction uniform.
Point sample_move(double mean_km, double stddev_km, RngStream& rng);

struct MoveOutcome {
    Point position;
    double distance_km = 0.0;  // 0 when the cluster stayed in place
};

// Applies the displacement if the endpoint stays inside the country;
// otherwise redraws the direction (same distance) up to max_retries times,
// then stays in place.
MoveOutcome apply_move(Point position, Point displacement,
                       const RegionSet& country, RngStream& rng,
                       int max_retries = 16);

// Inter-state relocation of a migrant-tagged cluster. Fires with the
// policy's per-day rate (scaled down under lockdown); destination is home
// when away from home, otherwise drawn from the migration row.
void migrate_cluster(Cluster& cluster, const std::vector<StateRecord>& records,
                     const RegionSet& regions, const Policy& policy, int day,
                     std::uint64_t seed);

enum class ContactMethod { Naive, Grid };

// All unordered pairs at Euclidean distance strictly below threshold,
// sorted ascending. Naive is the O(N^2) oracle; Grid buckets into cells of
// side = threshold and scans the 3x3 neighborhood. Identical results.
std::vector<std::pair<int, int>> detect_contacts(std::span<const Point> positions,
                                                 double threshold_km,
                                                 ContactMethod method,
                                                 int threads = 1);

// Single-pass transmission against the infected-at-dawn set: for each pair
// with exactly one infected member the healthy one becomes infected with its
// state's transmission probability. Order-independent; returns the number of
// new infections. new_day is stamped as infection_day.
int apply_transmission(World& world,
                       std::span<const std::pair<int, int>> contacts,
                       int new_day);

// Optional per-cluster instrumentation for test builds.
struct StepTrace {
    std::vector<double> regime_mean_km;
    std::vector<double> realized_km;
};

// One day of the simulation: movement, migration, contact detection,
// transmission, day increment. Observable results are identical for any
// thread count.
DailyMetrics step_day(World& world, int threads = 1, StepTrace* trace = nullptr);

struct RunResult {
    std::vector<DailyMetrics> series;
    std::map<int, std::string> snapshots;  // day -> snapshot CSV
};

struct SimInputs {
    const RegionSet* regions = nullptr;
    std::vector<StateRecord> records;
    AgeRiskTable risk;
    ModelConstants constants;
};

struct ScenarioConfig;  // defined in config.hpp

RunResult run_scenario(const ScenarioConfig& config, const SimInputs& inputs);

}  // namespace kinspread
