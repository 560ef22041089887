#pragma once

#include "dlbench/core.hpp"
#include "dlbench/ea.hpp"
#include "dlbench/eda.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

/// Experiment configuration, repetition management, trajectory capture,
/// statistics and file emission. A full experiment is a pure function of
/// (config, master_seed): repetitions run on independent streams and results
/// are assembled in run order, so emitted files are byte-identical across
/// re-runs of the same build.
namespace dlbench {

/// A population size given either as a fixed count or as a rule resolved per
/// problem size: "sqrt(n)", "sqrt(n)*log(n)" (natural log), "n" for lambda,
/// and "lambda/2" for mu. Rules round to the nearest integer, floored at 1.
struct PopulationRule {
    enum class Kind { Fixed, SqrtN, SqrtNLogN, N, HalfLambda };

    Kind kind = Kind::Fixed;
    int value = 0;

    static PopulationRule fixed(int v) { return {Kind::Fixed, v}; }
    static PopulationRule parse(const std::string& text, bool
                                is_mu); ///< rejects unknown rules
    int resolve(Eigen::Index n, int lambda) const;
    std::string to_string() const;
};

struct ExperimentConfig {
    std::string algorithm;          ///< "1+lambda", "mu+1", "mu,lambda", "ga", "umda", "mimic"
    std::string fitness = "dlb";    ///< "dlb", "leading_ones", "one_max"
    std::vector<Eigen::Index> ns;   ///< one value, or a strictly increasing sweep list
    std::int64_t budget = 0;        ///< 0 = the 1e8 safety cap
    int repetitions = 1;
    std::uint64_t master_seed = 1;
    std::int64_t trajectory_stride = 0; ///< evaluations between samples; 0 = budget/200
    bool record_trajectory = true;
    std::string out_dir = "out";

    std::optional<PopulationRule> mu, lambda;
    double chi = 1.0;
    double p_c = 0.0;
    std::string selection = "tournament:2";
    std::string crossover = "uniform";
    std::string mimic_clamp = "two_sided";

    static ExperimentConfig from_json_text(const std::string& text);
    static ExperimentConfig from_json_file(const std::string& path);

    std::int64_t effective_budget() const { return budget > 0 ? budget : 100000000; }
    std::int64_t effective_stride() const {
        return trajectory_stride > 0 ? trajectory_stride
                                     : std::max<std::int64_t>(1, effective_budget() / 200);
    }
    void validate() const;
};

struct RunRecord {
    int run_id = 0;
    std::string algorithm, fitness;
    Eigen::Index n = 0;
    int mu = 0, lambda = 0;
    std::uint64_t seed = 0; ///< per-run stream id under the master seed
    std::optional<std::int64_t> evals_to_optimum;
    Fitness best_fitness = 0; ///< fittest of the final population
    int correct_blocks = 0;   ///< phi of that individual (w=2; 0 when n is odd)
};

struct TrajectoryPoint {
    int run_id = 0;
    std::int64_t t = 0; ///< evaluations used
    int correct_blocks = 0;
    Fitness best_fitness = 0;
    std::optional<int> Z, Z_star; ///< EDA runs on dlb only
};

struct ExperimentResult {
    std::vector<RunRecord> records;
    std::vector<TrajectoryPoint> trajectory;
};

/// Runs repetitions x problem sizes with one independent stream per run
/// (stream id = run id). Deterministic for a fixed config and master seed.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// Nearest-rank five-number summary (min, Q1, median, Q3, max). Rejects
/// empty input.
struct FiveNumber {
    double min = 0, q1 = 0, median = 0, q3 = 0, max = 0;
};
FiveNumber five_number_summary(std::vector<double> values);

/// Mean with a normal-approximation 95% confidence interval.
struct MeanCi {
    double mean = 0, lo = 0, hi = 0;
    std::int64_t count = 0;
};
MeanCi mean_ci95(const std::vector<double>& values);

struct TrajectoryQuantileRow {
    std::int64_t t = 0;
    FiveNumber blocks;
};
/// Per time bucket, the five-number summary of correct_blocks across runs.
std::vector<TrajectoryQuantileRow> trajectory_quantiles(const std::vector<TrajectoryPoint>& points);

struct RuntimeSummary {
    std::int64_t runs = 0, solved = 0;
    MeanCi evals;        ///< over the summarised values
    FiveNumber quantiles;
};
/// Runtime statistics over evals_to_optimum. Unsolved runs take
/// `unsolved_value` when given, and are excluded otherwise.
RuntimeSummary summarize_runtimes(const std::vector<RunRecord>& records,
                                  std::optional<std::int64_t> unsolved_value = std::nullopt);

/// Least-squares fit of log2(evals) against log2(n). Rejects fewer than
/// three distinct n values.
struct ScalingFit {
    double slope = 0, intercept = 0;
};
ScalingFit fit_scaling(const std::vector<std::pair<double, double>>& n_vs_evals);

/// CSV emission with pinned column orders. Missing evals_to_optimum becomes
/// an empty field. I/O failures raise IoError with the path in the message.
void emit_runs_csv(const std::string& path, const std::vector<RunRecord>& records);
void emit_trajectory_csv(const std::string& path, const std::vector<TrajectoryPoint>& points);

/// Writes runs.csv, trajectory.csv (when recorded), trajectory_summary.csv
/// and runtime_summary.json under config.out_dir.
void emit_run_outputs(const ExperimentConfig& config, const ExperimentResult& result);

struct SweepRow {
    Eigen::Index n = 0;
    int mu = 0, lambda = 0;
    std::int64_t runs = 0, solved = 0, capped = 0;
    double mean_evals = 0, median_evals = 0; ///< over solved runs
};
struct SweepResult {
    std::vector<SweepRow> rows;
    ExperimentResult experiment;
    ScalingFit fit;
    bool fit_valid = false;
};

/// Sweep over the configured n list; capped (budget-exhausted) runs are
/// counted per row and reported explicitly.
SweepResult run_sweep(const ExperimentConfig& config);

/// Writes runs.csv, sweep_summary.csv and sweep_summary.json.
void emit_sweep_outputs(const ExperimentConfig& config, const SweepResult& sweep);

/// Reads runs.csv (and trajectory.csv when present) back from a directory.
ExperimentResult read_experiment_csv(const std::string& dir);

/// Writes trajectory_summary.csv and runtime_summary.json for an existing
/// result directory (the `summarize` subcommand).
void emit_summary_outputs(const std::string& dir, const ExperimentResult& result);

} // namespace dlbench
