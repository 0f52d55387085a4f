#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "kinspread/geom.hpp"
#include "kinspread/tables.hpp"

namespace kinspread {

enum class Health { Healthy, Infected };

struct Cluster {
    int id = 0;
    int home_state = 0;
    int current_state = 0;
    Point position;
    Health status = Health::Healthy;
    int infection_day = -1;  // valid only when infected
    bool migrant = false;
    double last_move_km = 0.0;

    bool infected() const { return status == Health::Infected; }
};

enum class TransmissionMode { Deterministic, AgeWeighted };

struct Policy {
    std::optional<int> lockdown_day;
    double restriction_factor = 50.0;
    int incubation_days = 5;
    double mean_move_km = 35.0;
    double migration_rate = 0.0;  // per-day firing probability per migrant
    TransmissionMode transmission_mode = TransmissionMode::Deterministic;
    double base_probability = 1.0;

    bool lockdown_active(int day) const {
        return lockdown_day && day >= *lockdown_day;
    }
};

// Full simulation state at a day boundary. Regions are shared immutable
// geometry owned by the caller for the lifetime of the world.
struct World {
    int day = 0;
    std::vector<Cluster> clusters;
    ModelConstants constants;
    std::vector<StateRecord> records;
    const RegionSet* regions = nullptr;
    Policy policy;
    std::uint64_t seed = 0;
    // Per-state per-contact transmission probability (1.0 in deterministic
    // mode), precomputed at seeding.
    std::vector<double> state_infection_prob;

    int infected_count() const;
};

// Builds the day-0 world: quota clusters per state at uniform positions
// inside the state polygon, initial_infected of them (picked uniformly
// without replacement) infected with infection_day 0, migrant tags drawn
// from each state's out-migration weight. Bit-exact for a given seed.
World seed_world(std::vector<StateRecord> records, const RegionSet& regions,
                 const ModelConstants& constants, const AgeRiskTable& risk,
                 const Policy& policy, std::uint64_t seed);

}  // namespace kinspread
