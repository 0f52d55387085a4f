#include "kinspread/world.hpp"

#include <numeric>
#include <stdexcept>

namespace kinspread {

int World::infected_count() const {
    int n = 0;
    for (const Cluster& c : clusters) n += c.infected();
    return n;
}

World seed_world(std::vector<StateRecord> records, const RegionSet& regions,
                 const ModelConstants& constants, const AgeRiskTable& risk,
                 const Policy& policy, std::uint64_t seed) {
    World world;
    world.constants = constants;
    world.regions = &regions;
    world.policy = policy;
    world.seed = seed;

    world.state_infection_prob.reserve(records.size());
    for (const StateRecord& r : records) {
        world.state_infection_prob.push_back(
            policy.transmission_mode == TransmissionMode::Deterministic
                ? 1.0
                : transmission_probability(r.age_distribution, risk,
                                           policy.base_probability));
    }

    int next_id = 0;
    for (std::size_t s = 0; s < records.size(); ++s) {
        const StateRecord& rec = records[s];
        const int region_index = regions.find(rec.name);
        if (region_index < 0)
            throw std::runtime_error("seed_world: no region for state '" +
                                     rec.name + "'");
        const Region& region = regions.at(region_index);

        // Uniform pick of initial_infected cluster slots, without
        // replacement (partial Fisher-Yates over the quota).
        std::vector<int> order(rec.cluster_quota);
        std::iota(order.begin(), order.end(), 0);
        RngStream pick(seed, s, 0, Draw::InfectPick);
        std::vector<bool> infected_slot(rec.cluster_quota, false);
        for (int k = 0; k < rec.initial_infected; ++k) {
            const auto j = k + pick.uniform_index(order.size() - k);
            std::swap(order[k], order[j]);
            infected_slot[order[k]] = true;
        }

        for (int local = 0; local < rec.cluster_quota; ++local) {
            Cluster c;
            c.id = next_id++;
            c.home_state = static_cast<int>(s);
            c.current_state = static_cast<int>(s);
            RngStream place(seed, static_cast<std::uint64_t>(c.id), 0,
                            Draw::Placement);
            c.position = sample_uniform(region, place);
            if (infected_slot[local]) {
                c.status = Health::Infected;
                c.infection_day = 0;
            }
            RngStream tag(seed, static_cast<std::uint64_t>(c.id), 0,
                          Draw::MigrantTag);
            c.migrant = tag.uniform01() < rec.out_weight();
            world.clusters.push_back(c);
        }
    }
    world.records = std::move(records);
    return world;
}

}  // namespace kinspread
