#include "kinspread/metrics.hpp"

#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <stdexcept>

namespace kinspread {

namespace {

void append_row(std::string& out, const char* fmt, ...) {
    char buf[256];
    va_list args;
    va_start(args, fmt);
    std::vsnprintf(buf, sizeof(buf), fmt, args);
    va_end(args);
    out += buf;
}

}  // namespace

DailyMetrics daily_metrics(const World& world, int previous_infected) {
    DailyMetrics m;
    m.day = world.day;
    m.infected_clusters = world.infected_count();
    m.new_infections = m.infected_clusters - previous_infected;
    double move_sum = 0.0;
    for (const Cluster& c : world.clusters) move_sum += c.last_move_km;
    m.mean_move_km = world.clusters.empty()
                         ? 0.0
                         : move_sum / static_cast<double>(world.clusters.size());
    m.high_risk_fraction =
        world.clusters.empty()
            ? 0.0
            : static_cast<double>(m.infected_clusters) /
                  static_cast<double>(world.clusters.size());
    return m;
}

int plateau_day(const std::vector<DailyMetrics>& series, double epsilon) {
    if (series.empty()) return -1;
    // Day after the last violation; stable under appending zero-growth days.
    int last_violation = -1;
    for (const DailyMetrics& m : series)
        if (m.new_infections > epsilon) last_violation = m.day;
    if (last_violation < 0) return series.front().day;
    if (last_violation >= series.back().day) return -1;
    return last_violation + 1;
}

ComparisonReport compare_runs(const std::vector<DailyMetrics>& lockdown,
                              const std::vector<DailyMetrics>& baseline,
                              double plateau_epsilon) {
    if (lockdown.size() != baseline.size())
        throw std::invalid_argument("compare_runs: horizon mismatch (" +
                                    std::to_string(lockdown.size()) + " vs " +
                                    std::to_string(baseline.size()) + " rows)");
    ComparisonReport report;
    for (std::size_t i = 0; i < lockdown.size(); ++i) {
        ComparisonRow row;
        row.day = lockdown[i].day;
        row.delta_infected = baseline[i].infected_clusters - lockdown[i].infected_clusters;
        row.ratio = lockdown[i].infected_clusters > 0
                        ? static_cast<double>(baseline[i].infected_clusters) /
                              lockdown[i].infected_clusters
                        : (baseline[i].infected_clusters > 0 ? HUGE_VAL : 1.0);
        report.rows.push_back(row);
    }
    report.final_ratio = report.rows.empty() ? 1.0 : report.rows.back().ratio;
    report.plateau_day = plateau_day(lockdown, plateau_epsilon);
    return report;
}

std::string metrics_csv(const std::vector<DailyMetrics>& series) {
    std::string out = "day,infected_clusters,new_infections,mean_move_km,high_risk_fraction\n";
    for (const DailyMetrics& m : series)
        append_row(out, "%d,%d,%d,%.6f,%.8f\n", m.day, m.infected_clusters,
                   m.new_infections, m.mean_move_km, m.high_risk_fraction);
    return out;
}

std::string comparison_csv(const ComparisonReport& report) {
    std::string out = "day,delta_infected,ratio\n";
    for (const ComparisonRow& r : report.rows)
        append_row(out, "%d,%d,%.6f\n", r.day, r.delta_infected, r.ratio);
    return out;
}

std::string snapshot_csv(const World& world) {
    std::string out = "day,cluster_id,x_km,y_km,state_name,status,infection_day\n";
    for (const Cluster& c : world.clusters) {
        const char* status = "healthy";
        if (c.infected())
            status = world.day - c.infection_day < world.policy.incubation_days
                         ? "incubating"
                         : "symptomatic";
        append_row(out, "%d,%d,%.6f,%.6f,", world.day, c.id, c.position.x,
                   c.position.y);
        out += world.records[c.current_state].name;
        append_row(out, ",%s,%d\n", status, c.infected() ? c.infection_day : -1);
    }
    return out;
}

}  // namespace kinspread
