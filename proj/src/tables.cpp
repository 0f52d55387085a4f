#include "kinspread/tables.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace kinspread {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, sep)) out.push_back(field);
    if (!line.empty() && line.back() == sep) out.emplace_back();
    return out;
}

// Locale-independent parse (dot decimal separator only).
double parse_double(const std::string& s, const std::string& context) {
    double value = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last)
        throw std::runtime_error("bad numeric field '" + s + "' in " + context);
    return value;
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path.string());
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) lines.push_back(line);
    }
    return lines;
}

}  // namespace

double StateRecord::out_weight() const {
    return std::accumulate(migration_row.begin(), migration_row.end(), 0.0);
}

double cluster_radius(double total_population, double total_area_km2,
                      double total_clusters) {
    if (total_population <= 0.0 || total_area_km2 <= 0.0 || total_clusters <= 0.0)
        throw std::invalid_argument("cluster_radius: inputs must be positive");
    // Reduced form of sqrt((1/pi) * (P/C) * (A/P)); exactly P-independent.
    return std::sqrt(total_area_km2 / (kPi * total_clusters));
}

std::vector<int> allocate_clusters(
    std::span<const std::pair<std::string, double>> state_populations, int cap) {
    if (state_populations.empty())
        throw std::invalid_argument("allocate_clusters: empty population table");
    if (cap <= 0) throw std::invalid_argument("allocate_clusters: cap must be positive");
    double pop_max = 0.0;
    for (const auto& [name, pop] : state_populations) {
        if (pop <= 0.0)
            throw std::invalid_argument("allocate_clusters: nonpositive population for " + name);
        pop_max = std::max(pop_max, pop);
    }
    std::vector<int> quotas;
    quotas.reserve(state_populations.size());
    for (const auto& [name, pop] : state_populations) {
        const int q = static_cast<int>(std::lround(cap * pop / pop_max));
        quotas.push_back(std::max(1, q));
    }
    return quotas;
}

double transmission_probability(std::span<const double> age_distribution,
                                const AgeRiskTable& risk, double base) {
    if (age_distribution.size() != risk.weights.size())
        throw std::invalid_argument(
            "transmission_probability: age bin count mismatch (" +
            std::to_string(age_distribution.size()) + " vs " +
            std::to_string(risk.weights.size()) + ")");
    double dot = 0.0;
    for (std::size_t i = 0; i < risk.weights.size(); ++i)
        dot += age_distribution[i] * risk.weights[i];
    return std::clamp(base * dot, 0.0, 1.0);
}

ModelConstants make_constants(const std::vector<StateRecord>& records,
                              double total_area_km2, double contact_coefficient,
                              double radius_override_km) {
    ModelConstants c;
    for (const StateRecord& r : records) {
        c.total_population += r.population;
        c.total_clusters += r.cluster_quota;
    }
    c.total_area_km2 = total_area_km2;
    c.contact_coefficient = contact_coefficient;
    c.persons_per_cluster = c.total_population / c.total_clusters;
    c.radius_km = radius_override_km > 0.0
                      ? radius_override_km
                      : cluster_radius(c.total_population, total_area_km2,
                                       c.total_clusters);
    return c;
}

std::vector<StateRecord> load_states_csv(const std::filesystem::path& path) {
    const auto lines = read_lines(path);
    if (lines.size() < 2)
        throw std::runtime_error(path.string() + ": no data rows");
    std::vector<StateRecord> records;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto fields = split(lines[i], ',');
        if (fields.size() != 6)
            throw std::runtime_error(path.string() + " line " + std::to_string(i + 1) +
                                     ": expected 6 fields");
        StateRecord r;
        r.name = fields[0];
        const std::string ctx = path.string() + " row '" + r.name + "'";
        r.population = parse_double(fields[1], ctx);
        r.cluster_quota = static_cast<int>(parse_double(fields[2], ctx));
        r.initial_infected = static_cast<int>(parse_double(fields[3], ctx));
        r.move_stddev_km = parse_double(fields[4], ctx);
        for (const std::string& f : split(fields[5], ';'))
            r.age_distribution.push_back(parse_double(f, ctx));

        if (r.initial_infected > r.cluster_quota)
            throw std::runtime_error(ctx + ": initial_infected exceeds cluster_quota");
        if (r.move_stddev_km <= 0.0)
            throw std::runtime_error(ctx + ": move_stddev_km must be positive");
        const double sum = std::accumulate(r.age_distribution.begin(),
                                           r.age_distribution.end(), 0.0);
        if (std::abs(sum - 1.0) > 1e-9)
            throw std::runtime_error(ctx + ": age distribution sums to " +
                                     std::to_string(sum));
        for (double f : r.age_distribution)
            if (f < 0.0 || f > 1.0)
                throw std::runtime_error(ctx + ": age fraction out of [0,1]");
        records.push_back(std::move(r));
    }
    return records;
}

void load_migration_csv(const std::filesystem::path& path,
                        std::vector<StateRecord>& records) {
    const auto lines = read_lines(path);
    if (lines.empty()) throw std::runtime_error(path.string() + ": empty file");
    const auto header = split(lines[0], ',');
    if (header.size() != records.size() + 1)
        throw std::runtime_error(path.string() + ": matrix is not square against " +
                                 std::to_string(records.size()) + " states");
    // Column order may differ from the records order.
    std::vector<int> col_to_state(records.size(), -1);
    auto index_of = [&records](const std::string& name) {
        for (std::size_t i = 0; i < records.size(); ++i)
            if (records[i].name == name) return static_cast<int>(i);
        return -1;
    };
    for (std::size_t c = 1; c < header.size(); ++c) {
        const int s = index_of(header[c]);
        if (s < 0)
            throw std::runtime_error(path.string() + ": unknown state column '" +
                                     header[c] + "'");
        col_to_state[c - 1] = s;
    }
    if (lines.size() != records.size() + 1)
        throw std::runtime_error(path.string() + ": expected " +
                                 std::to_string(records.size()) + " data rows");
    for (StateRecord& r : records)
        r.migration_row.assign(records.size(), 0.0);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto fields = split(lines[i], ',');
        if (fields.size() != records.size() + 1)
            throw std::runtime_error(path.string() + " line " + std::to_string(i + 1) +
                                     ": wrong column count");
        const int origin = index_of(fields[0]);
        if (origin < 0)
            throw std::runtime_error(path.string() + ": unknown origin state '" +
                                     fields[0] + "'");
        StateRecord& r = records[origin];
        for (std::size_t c = 1; c < fields.size(); ++c)
            r.migration_row[col_to_state[c - 1]] =
                parse_double(fields[c], path.string() + " row '" + fields[0] + "'");
        if (r.migration_row[origin] != 0.0)
            throw std::runtime_error(path.string() + ": nonzero self-migration for '" +
                                     r.name + "'");
        const double sum = r.out_weight();
        if (sum < 0.0 || sum > 1.0 + 1e-9)
            throw std::runtime_error(path.string() + ": migration row of '" + r.name +
                                     "' sums to " + std::to_string(sum));
    }
}

AgeRiskTable load_age_risk_csv(const std::filesystem::path& path) {
    const auto lines = read_lines(path);
    if (lines.size() < 2) throw std::runtime_error(path.string() + ": no data rows");
    AgeRiskTable t;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto fields = split(lines[i], ',');
        if (fields.size() != 2)
            throw std::runtime_error(path.string() + " line " + std::to_string(i + 1) +
                                     ": expected 2 fields");
        t.bins.push_back(fields[0]);
        t.weights.push_back(parse_double(fields[1], path.string()));
    }
    const double peak = *std::max_element(t.weights.begin(), t.weights.end());
    if (peak <= 0.0) throw std::runtime_error(path.string() + ": all weights zero");
    for (double& w : t.weights) {
        w /= peak;
        if (w < 0.0)
            throw std::runtime_error(path.string() + ": negative weight");
    }
    return t;
}

}  // namespace kinspread
