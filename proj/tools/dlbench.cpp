#include "dlbench/harness.hpp"
#include "dlbench/verify.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

int run_command(const std::string& config_path, std::optional<std::uint64_t> seed,
                std::optional<std::string> out_dir) {
    dlbench::ExperimentConfig cfg = dlbench::ExperimentConfig::from_json_file(config_path);
    if (seed) cfg.master_seed = *seed;
    if (out_dir) cfg.out_dir = *out_dir;
    if (cfg.ns.size() != 1)
        throw dlbench::ConfigError("`run` expects a single n; use `sweep` for n lists");

    const dlbench::ExperimentResult result = dlbench::run_experiment(cfg);
    dlbench::emit_run_outputs(cfg, result);

    const dlbench::RuntimeSummary s = dlbench::summarize_runtimes(result.records);
    std::cout << "runs: " << s.runs << "  solved: " << s.solved;
    if (s.solved > 0) std::cout << "  mean evals: " << s.evals.mean;
    std::cout << "\nwrote " << cfg.out_dir << "/runs.csv";
    if (cfg.record_trajectory) std::cout << ", trajectory.csv";
    std::cout << ", trajectory_summary.csv, runtime_summary.json\n";
    return 0;
}

int sweep_command(const std::string& config_path, std::optional<std::uint64_t> seed,
                  std::optional<std::string> out_dir) {
    dlbench::ExperimentConfig cfg = dlbench::ExperimentConfig::from_json_file(config_path);
    if (seed) cfg.master_seed = *seed;
    if (out_dir) cfg.out_dir = *out_dir;
    cfg.record_trajectory = false; // sweeps emit per-n summaries, not trajectories

    const dlbench::SweepResult sweep = dlbench::run_sweep(cfg);
    dlbench::emit_sweep_outputs(cfg, sweep);

    for (const dlbench::SweepRow& row : sweep.rows) {
        std::cout << "n=" << row.n << " mu=" << row.mu << " lambda=" << row.lambda
                  << " solved=" << row.solved << "/" << row.runs;
        if (row.solved > 0) std::cout << " mean_evals=" << row.mean_evals;
        if (row.capped > 0) std::cout << "  [" << row.capped << " runs hit the budget cap]";
        std::cout << '\n';
    }
    if (sweep.fit_valid)
        std::cout << "log-log fit: slope=" << sweep.fit.slope
                  << " intercept=" << sweep.fit.intercept << '\n';
    std::cout << "wrote " << cfg.out_dir << "/runs.csv, sweep_summary.csv, sweep_summary.json\n";
    return 0;
}

int verify_command(std::int64_t trials, std::uint64_t seed, const std::string& out_path) {
    const dlbench::VerifyReport report = dlbench::verify_all(trials, seed);
    const std::string text = dlbench::report_to_json(report);
    if (out_path.empty()) {
        std::cout << text << '\n';
    } else {
        std::ofstream out(out_path);
        if (!out) throw dlbench::IoError("cannot open for writing: " + out_path);
        out << text << '\n';
        if (!out) throw dlbench::IoError("write failed: " + out_path);
        std::cout << "wrote " << out_path << '\n';
    }
    std::cout << (report.all_pass() ? "all checks passed" : "SOME CHECKS FAILED") << '\n';
    return 0;
}

int summarize_command(const std::string& dir) {
    const dlbench::ExperimentResult result = dlbench::read_experiment_csv(dir);
    dlbench::emit_summary_outputs(dir, result);
    std::cout << "wrote " << dir << "/trajectory_summary.csv (when trajectories exist) and "
              << dir << "/runtime_summary.json\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Deceptive Leading Blocks benchmark harness"};
    app.require_subcommand(1);

    std::string config_path, in_dir, out_file;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out_dir;
    std::int64_t trials = 10000;
    std::uint64_t verify_seed = 1;

    CLI::App* run = app.add_subcommand("run", "run one experiment from a config file");
    run->add_option("--config", config_path, "JSON config file")->required();
    run->add_option("--seed", seed, "override master_seed");
    run->add_option("--out", out_dir, "override output directory");

    CLI::App* sweep = app.add_subcommand("sweep", "run a problem-size sweep from a config file");
    sweep->add_option("--config", config_path, "JSON config file")->required();
    sweep->add_option("--seed", seed, "override master_seed");
    sweep->add_option("--out", out_dir, "override output directory");

    CLI::App* verify = app.add_subcommand("verify", "run the Monte-Carlo verifier battery");
    verify->add_option("--trials", trials, "trials per check (default 10000)");
    verify->add_option("--seed", verify_seed, "verifier seed (default 1)");
    verify->add_option("--out", out_file, "write the JSON report here instead of stdout");

    CLI::App* summarize = app.add_subcommand("summarize", "recompute summaries for a result dir");
    summarize->add_option("--in", in_dir, "directory holding runs.csv / trajectory.csv")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (run->parsed()) return run_command(config_path, seed, out_dir);
        if (sweep->parsed()) return sweep_command(config_path, seed, out_dir);
        if (verify->parsed()) return verify_command(trials, verify_seed, out_file);
        if (summarize->parsed()) return summarize_command(in_dir);
    } catch (const dlbench::IoError& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
