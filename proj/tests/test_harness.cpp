#include "dlbench/harness.hpp"

#include "test_util.hpp"

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace dlbench;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct TempDir {
    std::filesystem::path path;
    explicit TempDir(const std::string& name) {
        path = std::filesystem::temp_directory_path() / ("dlbench_test_" + name);
        std::filesystem::remove_all(path);
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    std::string str() const { return path.string(); }
};

} // namespace

TEST_CASE("five-number summary uses nearest-rank order statistics") {
    const FiveNumber f = five_number_summary({1, 2, 3, 4, 5});
    CHECK(f.min == 1);
    CHECK(f.q1 == 2);
    CHECK(f.median == 3);
    CHECK(f.q3 == 4);
    CHECK(f.max == 5);

    const FiveNumber single = five_number_summary({7});
    CHECK(single.min == 7);
    CHECK(single.q1 == 7);
    CHECK(single.median == 7);
    CHECK(single.q3 == 7);
    CHECK(single.max == 7);

    CHECK_THROWS_AS(five_number_summary({}), std::invalid_argument);
}

TEST_CASE("mean with normal-approximation confidence interval") {
    const MeanCi m = mean_ci95({2, 4, 6});
    CHECK(m.mean == doctest::Approx(4.0));
    CHECK(m.count == 3);
    CHECK(m.lo < 4.0);
    CHECK(m.hi > 4.0);
    CHECK(m.hi - m.lo == doctest::Approx(2 * 1.96 * 2.0 / std::sqrt(3.0)).epsilon(1e-12));
}

TEST_CASE("fit_scaling recovers exact slopes") {
    std::vector<std::pair<double, double>> cubic, linear;
    for (double n : {10.0, 20.0, 40.0, 80.0}) {
        cubic.emplace_back(n, n * n * n);
        linear.emplace_back(n, 5 * n);
    }
    CHECK(fit_scaling(cubic).slope == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(fit_scaling(linear).slope == doctest::Approx(1.0).epsilon(1e-9));
    CHECK_THROWS_AS(fit_scaling({{10, 100}, {20, 200}}), std::invalid_argument);
    CHECK_THROWS_AS(fit_scaling({{10, 0}, {20, 1}, {40, 2}}), std::invalid_argument);
}

TEST_CASE("population rules resolve per problem size") {
    CHECK(PopulationRule::parse("sqrt(n)", false).resolve(100, 0) == 10);
    CHECK(PopulationRule::parse("sqrt(n)", false).resolve(10, 0) == 3);
    CHECK(PopulationRule::parse("sqrt(n)*log(n)", false).resolve(100, 0) == 46);
    CHECK(PopulationRule::parse("n", false).resolve(50, 0) == 50);
    CHECK(PopulationRule::parse("lambda/2", true).resolve(50, 9) == 4);
    CHECK(PopulationRule::fixed(7).resolve(1000, 0) == 7);
    CHECK_THROWS_AS(PopulationRule::parse("n^2", false), ConfigError);
    CHECK_THROWS_AS(PopulationRule::parse("sqrt(n)", true), ConfigError);
}

TEST_CASE("config parsing: full round trip and defaults") {
    const std::string text = R"({
        "algorithm": "umda",
        "fitness": "dlb",
        "n": 20,
        "budget": 10000,
        "repetitions": 3,
        "master_seed": 99,
        "params": {"mu": 10, "lambda": 50}
    })";
    const ExperimentConfig cfg = ExperimentConfig::from_json_text(text);
    CHECK(cfg.algorithm == "umda");
    CHECK(cfg.ns == std::vector<Eigen::Index>{20});
    CHECK(cfg.budget == 10000);
    CHECK(cfg.repetitions == 3);
    CHECK(cfg.master_seed == 99);
    CHECK(cfg.effective_stride() == 50); // budget/200
    CHECK(cfg.mu->resolve(20, 0) == 10);
}

TEST_CASE("config parsing rejects bad input") {
    CHECK_THROWS_AS(ExperimentConfig::from_json_text("not json"), ConfigError);
    CHECK_THROWS_AS(ExperimentConfig::from_json_text(R"({"algorithm":"sa","n":10})"), ConfigError);
    CHECK_THROWS_AS(ExperimentConfig::from_json_text(
                        R"({"algorithm":"umda","fitness":"trap5","n":10})"),
                    ConfigError);
    CHECK_THROWS_AS(ExperimentConfig::from_json_text(
                        R"({"algorithm":"umda","n":[10,10],"params":{"mu":2,"lambda":4}})"),
                    ConfigError); // not strictly increasing
    CHECK_THROWS_AS(ExperimentConfig::from_json_text(
                        R"({"algorithm":"umda","n":10,"typo_key":1})"),
                    ConfigError);
    CHECK_THROWS_AS(ExperimentConfig::from_json_text(
                        R"({"algorithm":"umda","n":10,"params":{"mu":2,"lambda":4,"bogus":1}})"),
                    ConfigError);
    CHECK_THROWS_AS(ExperimentConfig::from_json_file("/nonexistent/config.json"), IoError);
}

TEST_CASE("budget smaller than one generation is a config error") {
    ExperimentConfig cfg;
    cfg.algorithm = "umda";
    cfg.ns = {10};
    cfg.budget = 5;
    cfg.mu = PopulationRule::fixed(2);
    cfg.lambda = PopulationRule::fixed(10);
    CHECK_THROWS_AS(run_experiment(cfg), ConfigError);
}

TEST_CASE("missing required population parameters are config errors") {
    ExperimentConfig cfg;
    cfg.algorithm = "mu,lambda";
    cfg.ns = {10};
    cfg.budget = 1000;
    cfg.lambda = PopulationRule::fixed(10);
    CHECK_THROWS_AS(run_experiment(cfg), ConfigError); // no mu
}

TEST_CASE("run_experiment on (1+lambda)/one_max: solved runs, monotone trajectories") {
    ExperimentConfig cfg;
    cfg.algorithm = "1+lambda";
    cfg.fitness = "one_max";
    cfg.ns = {10};
    cfg.budget = 4000;
    cfg.repetitions = 3;
    cfg.master_seed = 12;
    cfg.trajectory_stride = 100;
    cfg.lambda = PopulationRule::fixed(4);

    const ExperimentResult result = run_experiment(cfg);
    REQUIRE(result.records.size() == 3);
    for (const RunRecord& r : result.records) {
        REQUIRE(r.evals_to_optimum.has_value());
        CHECK(*r.evals_to_optimum <= cfg.budget);
        CHECK(r.best_fitness == 10);
        CHECK(r.algorithm == "1+lambda");
        CHECK(r.mu == 1);
        CHECK(r.lambda == 4);
    }
    // 40 trajectory points per run, padded to the budget after solving.
    CHECK(result.trajectory.size() == 3 * 40);
    for (int run = 0; run < 3; ++run) {
        Fitness prev = -1;
        for (const TrajectoryPoint& p : result.trajectory) {
            if (p.run_id != run) continue;
            CHECK(p.best_fitness >= prev);
            prev = p.best_fitness;
            CHECK_FALSE(p.Z.has_value()); // EA runs carry no Z columns
        }
        CHECK(prev == 10);
    }
}

TEST_CASE("run_experiment on umda/dlb records Z <= Z* along the trajectory") {
    ExperimentConfig cfg;
    cfg.algorithm = "umda";
    cfg.fitness = "dlb";
    cfg.ns = {16};
    cfg.budget = 20000;
    cfg.repetitions = 2;
    cfg.master_seed = 5;
    cfg.trajectory_stride = 1000;
    cfg.mu = PopulationRule::fixed(10);
    cfg.lambda = PopulationRule::fixed(50);

    const ExperimentResult result = run_experiment(cfg);
    REQUIRE_FALSE(result.trajectory.empty());
    for (const TrajectoryPoint& p : result.trajectory) {
        REQUIRE(p.Z.has_value());
        REQUIRE(p.Z_star.has_value());
        CHECK(*p.Z <= *p.Z_star);
        CHECK(p.correct_blocks == *p.Z_star); // fittest individual's phi
    }
}

TEST_CASE("run_experiment is deterministic and emits byte-identical files") {
    ExperimentConfig cfg;
    cfg.algorithm = "mu,lambda";
    cfg.fitness = "dlb";
    cfg.ns = {12};
    cfg.budget = 6000;
    cfg.repetitions = 4;
    cfg.master_seed = 31;
    cfg.mu = PopulationRule::fixed(4);
    cfg.lambda = PopulationRule::fixed(20);
    cfg.trajectory_stride = 500;

    TempDir dir_a("emit_a"), dir_b("emit_b");
    const ExperimentResult a = run_experiment(cfg);
    const ExperimentResult b = run_experiment(cfg);

    cfg.out_dir = dir_a.str();
    emit_run_outputs(cfg, a);
    cfg.out_dir = dir_b.str();
    emit_run_outputs(cfg, b);

    CHECK(slurp(dir_a.str() + "/runs.csv") == slurp(dir_b.str() + "/runs.csv"));
    CHECK(slurp(dir_a.str() + "/trajectory.csv") == slurp(dir_b.str() + "/trajectory.csv"));
    CHECK(slurp(dir_a.str() + "/runtime_summary.json") ==
          slurp(dir_b.str() + "/runtime_summary.json"));

    const std::string runs_text = slurp(dir_a.str() + "/runs.csv");
    CHECK(runs_text.rfind("run_id,algorithm,fitness,n,mu,lambda,seed,evals_to_optimum,"
                          "best_fitness,correct_blocks\n",
                          0) == 0);
    const std::string traj_text = slurp(dir_a.str() + "/trajectory.csv");
    CHECK(traj_text.rfind("run_id,t,correct_blocks,best_fitness,Z,Z_star\n", 0) == 0);
}

TEST_CASE("csv round trip preserves records including empty evals fields") {
    TempDir dir("roundtrip");
    std::vector<RunRecord> records(2);
    records[0] = {0, "umda", "dlb", 10, 5, 20, 0, std::nullopt, 7, 3};
    records[1] = {1, "umda", "dlb", 10, 5, 20, 1, 1234, 10, 5};
    std::vector<TrajectoryPoint> points;
    points.push_back({0, 100, 3, 7, 2, 3});
    points.push_back({1, 100, 5, 10, std::nullopt, std::nullopt});
    emit_runs_csv(dir.str() + "/runs.csv", records);
    emit_trajectory_csv(dir.str() + "/trajectory.csv", points);

    const ExperimentResult back = read_experiment_csv(dir.str());
    REQUIRE(back.records.size() == 2);
    CHECK_FALSE(back.records[0].evals_to_optimum.has_value());
    REQUIRE(back.records[1].evals_to_optimum.has_value());
    CHECK(*back.records[1].evals_to_optimum == 1234);
    CHECK(back.records[1].best_fitness == 10);
    REQUIRE(back.trajectory.size() == 2);
    CHECK(back.trajectory[0].Z == 2);
    CHECK_FALSE(back.trajectory[1].Z.has_value());
}

TEST_CASE("emit raises IoError with the offending path") {
    const std::vector<RunRecord> records(1);
    try {
        emit_runs_csv("/nonexistent_dir/runs.csv", records);
        FAIL("expected IoError");
    } catch (const IoError& e) {
        CHECK(std::string(e.what()).find("/nonexistent_dir/runs.csv") != std::string::npos);
    }
}

TEST_CASE("trajectory quantiles bucket by time") {
    std::vector<TrajectoryPoint> points;
    for (int run = 0; run < 5; ++run) {
        points.push_back({run, 100, run + 1, 0, std::nullopt, std::nullopt});
        points.push_back({run, 200, 2 * (run + 1), 0, std::nullopt, std::nullopt});
    }
    const auto rows = trajectory_quantiles(points);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].t == 100);
    CHECK(rows[0].blocks.median == 3);
    CHECK(rows[1].t == 200);
    CHECK(rows[1].blocks.median == 6);
}

TEST_CASE("runtime summaries with and without an unsolved fallback") {
    std::vector<RunRecord> records(4);
    records[0].evals_to_optimum = 100;
    records[1].evals_to_optimum = 300;
    records[2].evals_to_optimum = 200;
    // records[3] unsolved
    const RuntimeSummary solved_only = summarize_runtimes(records);
    CHECK(solved_only.runs == 4);
    CHECK(solved_only.solved == 3);
    CHECK(solved_only.evals.mean == doctest::Approx(200.0));
    CHECK(solved_only.quantiles.median == 200);

    const RuntimeSummary with_fallback = summarize_runtimes(records, 1000);
    CHECK(with_fallback.evals.count == 4);
    CHECK(with_fallback.quantiles.max == 1000);
}

TEST_CASE("golden summary file for 100 synthetic records from a pinned stream") {
    RngStream rng(777, 0);
    std::vector<RunRecord> records(100);
    for (int i = 0; i < 100; ++i) {
        records[static_cast<std::size_t>(i)].run_id = i;
        records[static_cast<std::size_t>(i)].evals_to_optimum =
            1000 + rng.uniform_index(9000);
    }
    TempDir dir("golden");
    ExperimentResult result;
    result.records = records;
    emit_summary_outputs(dir.str(), result);
    const std::string got = slurp(dir.str() + "/runtime_summary.json");
    const std::string want = slurp(std::string(DLBENCH_TEST_DATA_DIR) + "/golden_runtime_summary.json");
    CHECK(got == want);
}

TEST_CASE("sweep aggregates per-n rows and fits the scaling slope") {
    ExperimentConfig cfg;
    cfg.algorithm = "mimic";
    cfg.fitness = "dlb";
    cfg.ns = {10, 14, 18};
    cfg.budget = 200000;
    cfg.repetitions = 3;
    cfg.master_seed = 21;
    cfg.record_trajectory = false;
    cfg.lambda = PopulationRule::parse("n", false);

    const SweepResult sweep = run_sweep(cfg);
    REQUIRE(sweep.rows.size() == 3);
    for (const SweepRow& row : sweep.rows) {
        CHECK(row.runs == 3);
        CHECK(row.solved == 3);
        CHECK(row.capped == 0);
        CHECK(row.lambda == row.n);
        CHECK(row.mu == row.lambda / 2); // the default mu rule
    }
    CHECK(sweep.fit_valid);

    TempDir dir("sweep");
    cfg.out_dir = dir.str();
    emit_sweep_outputs(cfg, sweep);
    const std::string text = slurp(dir.str() + "/sweep_summary.csv");
    CHECK(text.rfind("n,mu,lambda,runs,solved,capped,mean_evals,median_evals\n", 0) == 0);
}
