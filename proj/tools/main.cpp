#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kinspread/config.hpp"
#include "kinspread/engine.hpp"
#include "kinspread/metrics.hpp"

namespace fs = std::filesystem;
using namespace kinspread;

namespace {

struct CommonOpts {
    std::string config_path;
    std::string out_dir = "out";
    std::optional<std::uint64_t> seed;
    std::optional<int> threads;
    std::vector<int> snapshot_days;
};

ScenarioConfig load_with_overrides(const CommonOpts& opts) {
    ScenarioConfig config = load_config(opts.config_path);
    if (opts.seed) config.seed = *opts.seed;
    if (opts.threads) config.threads = *opts.threads;
    if (!opts.snapshot_days.empty()) config.snapshot_days = opts.snapshot_days;
    config.validate();
    return config;
}

void write_file(const fs::path& path, const std::string& contents) {
    fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << contents;
}

std::string scenario_name(const ScenarioConfig& config) {
    return config.lockdown_day ? "lockdown" : "no_lockdown";
}

fs::path run_dir(const std::string& out, const ScenarioConfig& config) {
    return fs::path(out) / scenario_name(config) / std::to_string(config.seed);
}

RunResult execute_and_write(const std::string& out, const ScenarioConfig& config,
                            const SimInputs& inputs) {
    RunResult result = run_scenario(config, inputs);
    const fs::path dir = run_dir(out, config);
    write_file(dir / "metrics.csv", metrics_csv(result.series));
    for (const auto& [day, csv] : result.snapshots)
        write_file(dir / ("snapshot_day_" + std::to_string(day) + ".csv"), csv);
    write_file(dir / "manifest.json", run_manifest(config));
    return result;
}

// Realized mean-movement drop around the lockdown day (day before vs day
// after); 0 when the horizon is too short.
double movement_drop_factor(const std::vector<DailyMetrics>& series,
                            int lockdown_day) {
    const int before = lockdown_day - 1;
    const int after = lockdown_day + 1;
    if (before < 1 || after >= static_cast<int>(series.size())) return 0.0;
    const double b = series[static_cast<std::size_t>(before)].mean_move_km;
    const double a = series[static_cast<std::size_t>(after)].mean_move_km;
    return a > 0.0 ? b / a : 0.0;
}

int cmd_run(const CommonOpts& opts) {
    const ScenarioConfig config = load_with_overrides(opts);
    const LoadedInputs loaded = load_inputs(config);
    const RunResult result = execute_and_write(opts.out_dir, config, loaded.inputs);
    const DailyMetrics& last = result.series.back();
    std::printf("%s seed=%llu day=%d infected=%d high_risk=%.4f -> %s\n",
                scenario_name(config).c_str(),
                static_cast<unsigned long long>(config.seed), last.day,
                last.infected_clusters, last.high_risk_fraction,
                run_dir(opts.out_dir, config).string().c_str());
    return 0;
}

int cmd_compare(const CommonOpts& opts, std::vector<std::uint64_t> seeds,
                double plateau_epsilon_fraction) {
    ScenarioConfig config = load_with_overrides(opts);
    if (!config.lockdown_day)
        throw std::runtime_error(
            "compare: config must set lockdown_day for the lockdown variant");
    if (seeds.empty()) seeds.push_back(config.seed);
    const LoadedInputs loaded = load_inputs(config);
    const double epsilon =
        plateau_epsilon_fraction * loaded.inputs.constants.total_clusters;

    std::string summary =
        "seed,lockdown_final_infected,no_lockdown_final_infected,final_ratio,"
        "movement_drop_factor,plateau_day\n";
    for (const std::uint64_t seed : seeds) {
        ScenarioConfig lockdown = config;
        lockdown.seed = seed;
        ScenarioConfig baseline = lockdown;
        baseline.lockdown_day.reset();

        const RunResult locked = execute_and_write(opts.out_dir, lockdown, loaded.inputs);
        const RunResult open = execute_and_write(opts.out_dir, baseline, loaded.inputs);
        const ComparisonReport report =
            compare_runs(locked.series, open.series, epsilon);
        write_file(fs::path(opts.out_dir) /
                       ("comparison_" + std::to_string(seed) + ".csv"),
                   comparison_csv(report));

        char row[192];
        std::snprintf(row, sizeof(row), "%llu,%d,%d,%.6f,%.4f,%d\n",
                      static_cast<unsigned long long>(seed),
                      locked.series.back().infected_clusters,
                      open.series.back().infected_clusters, report.final_ratio,
                      movement_drop_factor(locked.series, *config.lockdown_day),
                      report.plateau_day);
        summary += row;
        std::fputs(row, stdout);
    }
    write_file(fs::path(opts.out_dir) / "summary.csv", summary);
    return 0;
}

int cmd_validate(const CommonOpts& opts) {
    const ScenarioConfig config = load_with_overrides(opts);
    const auto checks = validate_data(config);
    bool all = true;
    for (const ValidationCheck& c : checks) {
        std::printf("[%s] %s: %s\n", c.passed ? "PASS" : "FAIL", c.name.c_str(),
                    c.detail.c_str());
        all = all && c.passed;
    }
    std::printf("%zu checks, %s\n", checks.size(), all ? "all passed" : "FAILURES");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cluster-kinetics epidemic scenario simulator"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::vector<std::uint64_t> seeds;
    double plateau_epsilon_fraction = 0.001;

    auto add_common = [&opts](CLI::App* cmd) {
        cmd->add_option("--config", opts.config_path, "scenario config file")
            ->required();
        cmd->add_option("--out", opts.out_dir, "output directory");
        cmd->add_option("--seed", opts.seed, "override the config seed");
        cmd->add_option("--threads", opts.threads, "worker threads");
        cmd->add_option("--snapshot-days", opts.snapshot_days,
                        "override snapshot day list");
    };

    CLI::App* run = app.add_subcommand("run", "execute one scenario");
    add_common(run);
    CLI::App* compare =
        app.add_subcommand("compare", "lockdown vs no-lockdown seed sweep");
    add_common(compare);
    compare->add_option("--seeds", seeds, "seed list for the sweep");
    compare->add_option("--plateau-epsilon", plateau_epsilon_fraction,
                        "plateau epsilon as a fraction of total clusters");
    CLI::App* validate =
        app.add_subcommand("validate-data", "check input data invariants");
    add_common(validate);

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(opts);
        if (compare->parsed())
            return cmd_compare(opts, seeds, plateau_epsilon_fraction);
        return cmd_validate(opts);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
