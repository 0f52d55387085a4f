#include "kinspread/engine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include "kinspread/config.hpp"

namespace kinspread {

namespace {

// Runs fn(begin, end) over [0, n) split into `threads` contiguous chunks.
template <typename Fn>
void parallel_ranges(std::size_t n, int threads, Fn&& fn) {
    threads = std::max(1, threads);
    if (threads == 1 || n < 2048) {
        fn(std::size_t{0}, n, 0);
        return;
    }
    const std::size_t chunk = (n + threads - 1) / threads;
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
        const std::size_t begin = t * chunk;
        const std::size_t end = std::min(n, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([&fn, begin, end, t] { fn(begin, end, t); });
    }
    for (auto& th : pool) th.join();
}

}  // namespace

double movement_scale(const Cluster& cluster, int day, const Policy& policy) {
    const bool symptomatic =
        cluster.infected() &&
        day - cluster.infection_day >= policy.incubation_days;
    if (policy.lockdown_active(day) || symptomatic)
        return 1.0 / policy.restriction_factor;
    return 1.0;
}

double movement_regime(const Cluster& cluster, int day, const Policy& policy) {
    return policy.mean_move_km * movement_scale(cluster, day, policy);
}

Point sample_move(double mean_km, double stddev_km, RngStream& rng) {
    const double distance = rng.normal_nonneg(mean_km, stddev_km);
    const double theta = rng.angle();
    return {distance * std::cos(theta), distance * std::sin(theta)};
}

MoveOutcome apply_move(Point position, Point displacement,
                       const RegionSet& country, RngStream& rng,
                       int max_retries) {
    const double distance = std::hypot(displacement.x, displacement.y);
    Point candidate{position.x + displacement.x, position.y + displacement.y};
    if (country.contains(candidate)) return {candidate, distance};
    for (int attempt = 0; attempt < max_retries; ++attempt) {
        const double theta = rng.angle();
        candidate = {position.x + distance * std::cos(theta),
                     position.y + distance * std::sin(theta)};
        if (country.contains(candidate)) return {candidate, distance};
    }
    return {position, 0.0};
}

void migrate_cluster(Cluster& cluster, const std::vector<StateRecord>& records,
                     const RegionSet& regions, const Policy& policy, int day,
                     std::uint64_t seed) {
    const std::uint64_t id = static_cast<std::uint64_t>(cluster.id);
    double rate = policy.migration_rate;
    if (policy.lockdown_active(day)) rate /= policy.restriction_factor;
    if (rate <= 0.0) return;
    RngStream fire(seed, id, static_cast<std::uint64_t>(day), Draw::MigrateFire);
    if (fire.uniform01() >= rate) return;

    int destination;
    if (cluster.current_state != cluster.home_state) {
        // Outbreak-period reversal: migrants away from home return home.
        destination = cluster.home_state;
    } else {
        const std::vector<double>& row = records[cluster.current_state].migration_row;
        const double total = records[cluster.current_state].out_weight();
        if (total <= 0.0) return;
        RngStream dest(seed, id, static_cast<std::uint64_t>(day), Draw::MigrateDest);
        double u = dest.uniform01() * total;
        destination = static_cast<int>(row.size()) - 1;
        for (std::size_t s = 0; s < row.size(); ++s) {
            u -= row[s];
            if (u < 0.0) {
                destination = static_cast<int>(s);
                break;
            }
        }
    }
    RngStream place(seed, id, static_cast<std::uint64_t>(day), Draw::MigratePlace);
    cluster.position = sample_uniform(regions.at(destination), place);
    cluster.current_state = destination;
}

namespace {

std::vector<std::pair<int, int>> contacts_naive(std::span<const Point> p,
                                                double threshold) {
    std::vector<std::pair<int, int>> pairs;
    const double t2 = threshold * threshold;
    const int n = static_cast<int>(p.size());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double dx = p[i].x - p[j].x;
            const double dy = p[i].y - p[j].y;
            if (dx * dx + dy * dy < t2) pairs.emplace_back(i, j);
        }
    return pairs;
}

std::vector<std::pair<int, int>> contacts_grid(std::span<const Point> p,
                                               double threshold, int threads) {
    const int n = static_cast<int>(p.size());
    std::vector<std::pair<int, int>> pairs;
    if (n < 2) return pairs;

    double min_x = p[0].x, min_y = p[0].y;
    for (const Point& q : p) {
        min_x = std::min(min_x, q.x);
        min_y = std::min(min_y, q.y);
    }
    auto cell_of = [&](const Point& q) {
        const auto cx = static_cast<std::uint64_t>((q.x - min_x) / threshold);
        const auto cy = static_cast<std::uint64_t>((q.y - min_y) / threshold);
        return (cx << 32) | cy;
    };

    // Indices sorted by cell key; per-cell contiguous ranges.
    std::vector<std::pair<std::uint64_t, int>> keyed(n);
    for (int i = 0; i < n; ++i) keyed[i] = {cell_of(p[i]), i};
    std::sort(keyed.begin(), keyed.end());

    std::vector<std::pair<std::uint64_t, std::pair<int, int>>> cells;
    std::unordered_map<std::uint64_t, int> cell_index;
    for (int i = 0; i < n;) {
        int j = i;
        while (j < n && keyed[j].first == keyed[i].first) ++j;
        cell_index.emplace(keyed[i].first, static_cast<int>(cells.size()));
        cells.push_back({keyed[i].first, {i, j}});
        i = j;
    }

    const double t2 = threshold * threshold;
    // Forward half-neighborhood; each unordered cell pair visited once.
    constexpr std::int64_t offsets[4][2] = {{1, 0}, {1, 1}, {0, 1}, {-1, 1}};

    threads = std::max(1, threads);
    std::vector<std::vector<std::pair<int, int>>> partial(
        static_cast<std::size_t>(threads));
    parallel_ranges(cells.size(), threads, [&](std::size_t begin, std::size_t end,
                                               int tid) {
        auto& out = partial[static_cast<std::size_t>(tid)];
        auto emit = [&](int a, int b) {
            const double dx = p[a].x - p[b].x;
            const double dy = p[a].y - p[b].y;
            if (dx * dx + dy * dy < t2)
                out.emplace_back(std::min(a, b), std::max(a, b));
        };
        for (std::size_t c = begin; c < end; ++c) {
            const auto [key, range] = cells[c];
            for (int i = range.first; i < range.second; ++i)
                for (int j = i + 1; j < range.second; ++j)
                    emit(keyed[i].second, keyed[j].second);
            const auto cx = static_cast<std::int64_t>(key >> 32);
            const auto cy = static_cast<std::int64_t>(key & 0xFFFFFFFFull);
            for (const auto& off : offsets) {
                const std::int64_t nx = cx + off[0];
                const std::int64_t ny = cy + off[1];
                if (nx < 0 || ny < 0) continue;
                const std::uint64_t nkey =
                    (static_cast<std::uint64_t>(nx) << 32) |
                    static_cast<std::uint64_t>(ny);
                const auto it = cell_index.find(nkey);
                if (it == cell_index.end()) continue;
                const auto nrange = cells[static_cast<std::size_t>(it->second)].second;
                for (int i = range.first; i < range.second; ++i)
                    for (int j = nrange.first; j < nrange.second; ++j)
                        emit(keyed[i].second, keyed[j].second);
            }
        }
    });
    for (auto& part : partial)
        pairs.insert(pairs.end(), part.begin(), part.end());
    std::sort(pairs.begin(), pairs.end());
    return pairs;
}

}  // namespace

std::vector<std::pair<int, int>> detect_contacts(std::span<const Point> positions,
                                                 double threshold_km,
                                                 ContactMethod method,
                                                 int threads) {
    if (threshold_km <= 0.0)
        throw std::invalid_argument("detect_contacts: threshold must be positive");
    auto pairs = method == ContactMethod::Naive
                     ? contacts_naive(positions, threshold_km)
                     : contacts_grid(positions, threshold_km, threads);
    return pairs;
}

int apply_transmission(World& world,
                       std::span<const std::pair<int, int>> contacts,
                       int new_day) {
    // Freeze the infected-at-dawn set so the pass is order-independent and
    // newly infected clusters do not transmit within the same day.
    std::vector<char> dawn_infected(world.clusters.size());
    for (std::size_t i = 0; i < world.clusters.size(); ++i)
        dawn_infected[i] = world.clusters[i].infected();

    std::vector<char> newly(world.clusters.size(), 0);
    for (const auto& [i, j] : contacts) {
        if (dawn_infected[i] == dawn_infected[j]) continue;
        const int healthy = dawn_infected[i] ? j : i;
        if (newly[healthy]) continue;
        const double prob =
            world.state_infection_prob[world.clusters[healthy].current_state];
        if (prob < 1.0) {
            RngStream draw(world.seed, static_cast<std::uint64_t>(i),
                           static_cast<std::uint64_t>(j), Draw::Transmit);
            if (draw.uniform01() >= prob) continue;
        }
        newly[healthy] = 1;
    }
    int count = 0;
    for (std::size_t i = 0; i < newly.size(); ++i) {
        if (!newly[i]) continue;
        world.clusters[i].status = Health::Infected;
        world.clusters[i].infection_day = new_day;
        ++count;
    }
    return count;
}

DailyMetrics step_day(World& world, int threads, StepTrace* trace) {
    const int new_day = world.day + 1;
    const int infected_before = world.infected_count();
    const std::size_t n = world.clusters.size();
    if (trace) {
        trace->regime_mean_km.assign(n, 0.0);
        trace->realized_km.assign(n, 0.0);
    }

    parallel_ranges(n, threads, [&](std::size_t begin, std::size_t end, int) {
        for (std::size_t i = begin; i < end; ++i) {
            Cluster& c = world.clusters[i];
            const double scale = movement_scale(c, new_day, world.policy);
            const double mean = world.policy.mean_move_km * scale;
            const double stddev =
                world.records[c.current_state].move_stddev_km * scale;
            const std::uint64_t id = static_cast<std::uint64_t>(c.id);
            RngStream move(world.seed, id, static_cast<std::uint64_t>(new_day),
                           Draw::Move);
            const Point disp = sample_move(mean, stddev, move);
            RngStream retry(world.seed, id, static_cast<std::uint64_t>(new_day),
                            Draw::MoveRetry);
            const MoveOutcome out =
                apply_move(c.position, disp, *world.regions, retry);
            c.position = out.position;
            c.last_move_km = out.distance_km;
            if (trace) {
                trace->regime_mean_km[i] = mean;
                trace->realized_km[i] = out.distance_km;
            }
        }
    });

    for (Cluster& c : world.clusters)
        if (c.migrant)
            migrate_cluster(c, world.records, *world.regions, world.policy,
                            new_day, world.seed);

    std::vector<Point> positions(n);
    for (std::size_t i = 0; i < n; ++i) positions[i] = world.clusters[i].position;
    const auto contacts = detect_contacts(
        positions, world.constants.contact_threshold_km(), ContactMethod::Grid,
        threads);
    apply_transmission(world, contacts, new_day);

    world.day = new_day;
    return daily_metrics(world, infected_before);
}

RunResult run_scenario(const ScenarioConfig& config, const SimInputs& inputs) {
    World world = seed_world(inputs.records, *inputs.regions, inputs.constants,
                             inputs.risk, config.policy(), config.seed);
    RunResult result;
    result.series.push_back(daily_metrics(world, world.infected_count()));
    auto wants_snapshot = [&config](int day) {
        return std::find(config.snapshot_days.begin(), config.snapshot_days.end(),
                         day) != config.snapshot_days.end();
    };
    if (wants_snapshot(0)) result.snapshots[0] = snapshot_csv(world);
    for (int day = 1; day <= config.horizon_days; ++day) {
        result.series.push_back(step_day(world, config.threads));
        if (wants_snapshot(day)) result.snapshots[day] = snapshot_csv(world);
    }
    return result;
}

}  // namespace kinspread
