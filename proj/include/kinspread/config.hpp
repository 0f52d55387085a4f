#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "kinspread/engine.hpp"

namespace kinspread {

// All scenario tunables plus input paths; one config file is the canonical,
// reproducible description of a run.
struct ScenarioConfig {
    int horizon_days = 60;
    std::optional<int> lockdown_day = 5;
    double restriction_factor = 50.0;
    int incubation_days = 5;
    double mean_move_km = 35.0;
    double contact_coefficient = 2.01;
    std::optional<double> total_area_km2;      // default: bundled geometry sum
    std::optional<double> radius_override_km;  // default: Eq-form radius
    std::uint64_t seed = 1;
    std::vector<int> snapshot_days = {5, 15, 25, 35, 45, 60};
    TransmissionMode transmission_mode = TransmissionMode::Deterministic;
    double transmission_base_probability = 1.0;
    double migration_rate = 1.0 / 365.0;
    int threads = 1;

    std::filesystem::path states_csv;
    std::filesystem::path migration_csv;
    std::filesystem::path age_risk_csv;
    std::filesystem::path geometry;

    void validate() const;  // throws on the first failing constraint
    Policy policy() const;
};

// Parses a JSON config file; relative input paths resolve against the
// config file's directory.
ScenarioConfig load_config(const std::filesystem::path& path);

// Loads and cross-validates the four data files. The returned RegionSet
// must outlive the SimInputs handed to the engine.
struct LoadedInputs {
    std::unique_ptr<RegionSet> regions;
    SimInputs inputs;  // inputs.regions points at *regions
};
LoadedInputs load_inputs(const ScenarioConfig& config);

struct ValidationCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

// Report-only data validation (region invariants, table invariants, totals).
std::vector<ValidationCheck> validate_data(const ScenarioConfig& config);

// JSON manifest reconstructing the run: config echo, seed, data digests.
std::string run_manifest(const ScenarioConfig& config);

}  // namespace kinspread
