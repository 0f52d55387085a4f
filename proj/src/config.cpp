#include "kinspread/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace kinspread {

namespace {

using nlohmann::json;

std::filesystem::path resolve(const std::filesystem::path& base,
                              const std::string& p) {
    std::filesystem::path path(p);
    return path.is_absolute() ? path : base / path;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::uint64_t fnv1a(const std::string& bytes) {
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001B3ull;
    }
    return h;
}

json config_json(const ScenarioConfig& c) {
    json j;
    j["horizon_days"] = c.horizon_days;
    if (c.lockdown_day)
        j["lockdown_day"] = *c.lockdown_day;
    else
        j["lockdown_day"] = nullptr;
    j["restriction_factor"] = c.restriction_factor;
    j["incubation_days"] = c.incubation_days;
    j["mean_move_km"] = c.mean_move_km;
    j["contact_coefficient"] = c.contact_coefficient;
    if (c.total_area_km2) j["total_area_km2"] = *c.total_area_km2;
    if (c.radius_override_km) j["radius_override_km"] = *c.radius_override_km;
    j["seed"] = c.seed;
    j["snapshot_days"] = c.snapshot_days;
    j["transmission_mode"] =
        c.transmission_mode == TransmissionMode::Deterministic ? "deterministic"
                                                               : "age_weighted";
    j["transmission_base_probability"] = c.transmission_base_probability;
    j["migration_rate"] = c.migration_rate;
    j["threads"] = c.threads;
    j["states_csv"] = c.states_csv.string();
    j["migration_csv"] = c.migration_csv.string();
    j["age_risk_csv"] = c.age_risk_csv.string();
    j["geometry"] = c.geometry.string();
    return j;
}

}  // namespace

void ScenarioConfig::validate() const {
    if (horizon_days < 0) throw std::runtime_error("config: horizon_days must be >= 0");
    if (lockdown_day && *lockdown_day >= horizon_days && horizon_days > 0)
        throw std::runtime_error("config: lockdown_day must be < horizon_days");
    if (restriction_factor < 1.0)
        throw std::runtime_error("config: restriction_factor must be >= 1");
    if (incubation_days < 0)
        throw std::runtime_error("config: incubation_days must be >= 0");
    if (mean_move_km <= 0.0)
        throw std::runtime_error("config: mean_move_km must be positive");
    if (contact_coefficient <= 0.0)
        throw std::runtime_error("config: contact_coefficient must be positive");
    if (total_area_km2 && *total_area_km2 <= 0.0)
        throw std::runtime_error("config: total_area_km2 must be positive");
    if (radius_override_km && *radius_override_km <= 0.0)
        throw std::runtime_error("config: radius_override_km must be positive");
    if (transmission_base_probability < 0.0 || transmission_base_probability > 1.0)
        throw std::runtime_error("config: transmission_base_probability must be in [0,1]");
    if (migration_rate < 0.0 || migration_rate > 1.0)
        throw std::runtime_error("config: migration_rate must be in [0,1]");
    if (threads < 1) throw std::runtime_error("config: threads must be >= 1");
    for (int d : snapshot_days)
        if (d < 0) throw std::runtime_error("config: snapshot days must be >= 0");
    for (const auto* p : {&states_csv, &migration_csv, &age_risk_csv, &geometry})
        if (p->empty()) throw std::runtime_error("config: missing input path");
}

Policy ScenarioConfig::policy() const {
    Policy p;
    p.lockdown_day = lockdown_day;
    p.restriction_factor = restriction_factor;
    p.incubation_days = incubation_days;
    p.mean_move_km = mean_move_km;
    p.migration_rate = migration_rate;
    p.transmission_mode = transmission_mode;
    p.base_probability = transmission_base_probability;
    return p;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path.string());
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw std::runtime_error(path.string() + ": " + e.what());
    }

    ScenarioConfig c;
    const auto base = std::filesystem::absolute(path).parent_path();
    c.horizon_days = doc.value("horizon_days", c.horizon_days);
    if (doc.contains("lockdown_day")) {
        if (doc["lockdown_day"].is_null())
            c.lockdown_day.reset();
        else
            c.lockdown_day = doc["lockdown_day"].get<int>();
    }
    c.restriction_factor = doc.value("restriction_factor", c.restriction_factor);
    c.incubation_days = doc.value("incubation_days", c.incubation_days);
    c.mean_move_km = doc.value("mean_move_km", c.mean_move_km);
    c.contact_coefficient = doc.value("contact_coefficient", c.contact_coefficient);
    if (doc.contains("total_area_km2"))
        c.total_area_km2 = doc["total_area_km2"].get<double>();
    if (doc.contains("radius_override_km"))
        c.radius_override_km = doc["radius_override_km"].get<double>();
    c.seed = doc.value("seed", c.seed);
    if (doc.contains("snapshot_days"))
        c.snapshot_days = doc["snapshot_days"].get<std::vector<int>>();
    if (doc.contains("transmission_mode")) {
        const std::string mode = doc["transmission_mode"].get<std::string>();
        if (mode == "deterministic")
            c.transmission_mode = TransmissionMode::Deterministic;
        else if (mode == "age_weighted")
            c.transmission_mode = TransmissionMode::AgeWeighted;
        else
            throw std::runtime_error(path.string() +
                                     ": unknown transmission_mode '" + mode + "'");
    }
    c.transmission_base_probability =
        doc.value("transmission_base_probability", c.transmission_base_probability);
    c.migration_rate = doc.value("migration_rate", c.migration_rate);
    c.threads = doc.value("threads", c.threads);
    c.states_csv = resolve(base, doc.at("states_csv").get<std::string>());
    c.migration_csv = resolve(base, doc.at("migration_csv").get<std::string>());
    c.age_risk_csv = resolve(base, doc.at("age_risk_csv").get<std::string>());
    c.geometry = resolve(base, doc.at("geometry").get<std::string>());
    return c;
}

LoadedInputs load_inputs(const ScenarioConfig& config) {
    LoadedInputs loaded;
    loaded.regions = std::make_unique<RegionSet>(load_regions(config.geometry));
    loaded.inputs.regions = loaded.regions.get();
    loaded.inputs.records = load_states_csv(config.states_csv);
    load_migration_csv(config.migration_csv, loaded.inputs.records);
    loaded.inputs.risk = load_age_risk_csv(config.age_risk_csv);

    for (const StateRecord& r : loaded.inputs.records) {
        if (loaded.regions->find(r.name) < 0)
            throw std::runtime_error("no region for state '" + r.name + "' in " +
                                     config.geometry.string());
        if (r.age_distribution.size() != loaded.inputs.risk.weights.size())
            throw std::runtime_error("state '" + r.name +
                                     "': age bins do not match the risk table");
    }
    const double area = config.total_area_km2 ? *config.total_area_km2
                                              : loaded.regions->total_area();
    loaded.inputs.constants = make_constants(
        loaded.inputs.records, area, config.contact_coefficient,
        config.radius_override_km.value_or(0.0));
    return loaded;
}

std::vector<ValidationCheck> validate_data(const ScenarioConfig& config) {
    std::vector<ValidationCheck> checks;
    auto run_check = [&checks](const std::string& name, auto&& fn) {
        ValidationCheck c{name, false, ""};
        try {
            c.detail = fn();
            c.passed = true;
        } catch (const std::exception& e) {
            c.detail = e.what();
        }
        checks.push_back(std::move(c));
    };

    std::unique_ptr<RegionSet> regions;
    run_check("geometry: regions load with valid rings and positive areas", [&] {
        regions = std::make_unique<RegionSet>(load_regions(config.geometry));
        return std::to_string(regions->size()) + " regions, total area " +
               std::to_string(regions->total_area()) + " km^2";
    });

    std::vector<StateRecord> records;
    run_check("states: rows parse with valid quotas and age sums", [&] {
        records = load_states_csv(config.states_csv);
        int quota = 0, infected = 0;
        for (const StateRecord& r : records) {
            quota += r.cluster_quota;
            infected += r.initial_infected;
        }
        return std::to_string(records.size()) + " states, " +
               std::to_string(quota) + " clusters, " + std::to_string(infected) +
               " infected";
    });

    run_check("migration: square matrix with row sums <= 1", [&] {
        if (records.empty()) throw std::runtime_error("states table not loaded");
        auto copy = records;
        load_migration_csv(config.migration_csv, copy);
        return std::to_string(copy.size()) + "x" + std::to_string(copy.size()) +
               " matrix";
    });

    AgeRiskTable risk;
    run_check("age risk: weights in [0,1] with unit peak", [&] {
        risk = load_age_risk_csv(config.age_risk_csv);
        return std::to_string(risk.weights.size()) + " bins";
    });

    run_check("cross: every state has a region and matching age bins", [&] {
        if (!regions || records.empty() || risk.weights.empty())
            throw std::runtime_error("prerequisite inputs failed to load");
        for (const StateRecord& r : records) {
            if (regions->find(r.name) < 0)
                throw std::runtime_error("state '" + r.name + "' has no region");
            if (r.age_distribution.size() != risk.weights.size())
                throw std::runtime_error("state '" + r.name +
                                         "': age bin count mismatch");
        }
        return "all " + std::to_string(records.size()) + " states matched";
    });

    return checks;
}

std::string run_manifest(const ScenarioConfig& config) {
    json manifest;
    manifest["generator"] = "kinspread 0.1.0";
    manifest["seed"] = config.seed;
    manifest["config"] = config_json(config);
    json digests;
    const std::pair<const char*, const std::filesystem::path*> files[] = {
        {"states_csv", &config.states_csv},
        {"migration_csv", &config.migration_csv},
        {"age_risk_csv", &config.age_risk_csv},
        {"geometry", &config.geometry}};
    for (const auto& [label, path] : files) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%016llx",
                      static_cast<unsigned long long>(fnv1a(read_file(*path))));
        digests[label] = buf;
    }
    manifest["data_digests"] = digests;
    return manifest.dump(2) + "\n";
}

}  // namespace kinspread
