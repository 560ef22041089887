#include "dlbench/harness.hpp"

#include "dlbench/parallel.hpp"

#include <json.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

namespace dlbench {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string format_g(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

int blocks_of(const BitString& x) { return x.size() % 2 == 0 ? phi(x, 2) : 0; }

} // namespace

PopulationRule PopulationRule::parse(const std::string& text, bool is_mu) {
    if (is_mu) {
        if (text == "lambda/2") return {Kind::HalfLambda, 0};
        throw ConfigError("unknown mu rule: \"" + text + "\" (expected \"lambda/2\")");
    }
    if (text == "sqrt(n)") return {Kind::SqrtN, 0};
    if (text == "sqrt(n)*log(n)") return {Kind::SqrtNLogN, 0};
    if (text == "n") return {Kind::N, 0};
    throw ConfigError("unknown lambda rule: \"" + text + "\"");
}

int PopulationRule::resolve(Eigen::Index n, int lambda) const {
    const double nd = static_cast<double>(n);
    double v = 0;
    switch (kind) {
        case Kind::Fixed: return value;
        case Kind::SqrtN: v = std::sqrt(nd); break;
        case Kind::SqrtNLogN: v = std::sqrt(nd) * std::log(nd); break;
        case Kind::N: v = nd; break;
        case Kind::HalfLambda: return std::max(1, lambda / 2);
    }
    return std::max(1, static_cast<int>(std::llround(v)));
}

std::string PopulationRule::to_string() const {
    switch (kind) {
        case Kind::Fixed: return std::to_string(value);
        case Kind::SqrtN: return "sqrt(n)";
        case Kind::SqrtNLogN: return "sqrt(n)*log(n)";
        case Kind::N: return "n";
        case Kind::HalfLambda: return "lambda/2";
    }
    return "?";
}

namespace {

PopulationRule parse_rule(const json& v, bool is_mu, const char* key) {
    if (v.is_number()) {
        const double d = v.get<double>();
        if (d < 1 || d != std::floor(d))
            throw ConfigError(std::string(key) + " must be an integer >= 1");
        return PopulationRule::fixed(static_cast<int>(d));
    }
    if (v.is_string()) return PopulationRule::parse(v.get<std::string>(), is_mu);
    throw ConfigError(std::string(key) + " must be a number or a rule string");
}

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> known,
                         const char* where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char* k : known)
            if (it.key() == k) ok = true;
        if (!ok) throw ConfigError(std::string("unknown ") + where + " key: \"" + it.key() + "\"");
    }
}

} // namespace

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config root must be a JSON object");
    reject_unknown_keys(j,
                        {"algorithm", "fitness", "n", "budget", "repetitions", "master_seed",
                         "trajectory_stride", "record_trajectory", "out", "params"},
                        "config");

    ExperimentConfig cfg;
    try {
        cfg.algorithm = j.at("algorithm").get<std::string>();
        if (j.contains("fitness")) cfg.fitness = j.at("fitness").get<std::string>();
        const json& n = j.at("n");
        if (n.is_array()) {
            for (const json& v : n) cfg.ns.push_back(v.get<Eigen::Index>());
        } else {
            cfg.ns.push_back(n.get<Eigen::Index>());
        }
        if (j.contains("budget")) cfg.budget = j.at("budget").get<std::int64_t>();
        if (j.contains("repetitions")) cfg.repetitions = j.at("repetitions").get<int>();
        if (j.contains("master_seed")) cfg.master_seed = j.at("master_seed").get<std::uint64_t>();
        if (j.contains("trajectory_stride"))
            cfg.trajectory_stride = j.at("trajectory_stride").get<std::int64_t>();
        if (j.contains("record_trajectory"))
            cfg.record_trajectory = j.at("record_trajectory").get<bool>();
        if (j.contains("out")) cfg.out_dir = j.at("out").get<std::string>();

        if (j.contains("params")) {
            const json& p = j.at("params");
            reject_unknown_keys(
                p, {"mu", "lambda", "chi", "p_c", "selection", "crossover", "mimic_clamp"},
                "params");
            if (p.contains("mu")) cfg.mu = parse_rule(p.at("mu"), true, "mu");
            if (p.contains("lambda")) cfg.lambda = parse_rule(p.at("lambda"), false, "lambda");
            if (p.contains("chi")) cfg.chi = p.at("chi").get<double>();
            if (p.contains("p_c")) cfg.p_c = p.at("p_c").get<double>();
            if (p.contains("selection")) cfg.selection = p.at("selection").get<std::string>();
            if (p.contains("crossover")) cfg.crossover = p.at("crossover").get<std::string>();
            if (p.contains("mimic_clamp")) cfg.mimic_clamp = p.at("mimic_clamp").get<std::string>();
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("bad config value: ") + e.what());
    }
    cfg.validate();
    return cfg;
}

ExperimentConfig ExperimentConfig::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_json_text(buf.str());
}

void ExperimentConfig::validate() const {
    static const std::vector<std::string> algos = {"1+lambda", "mu+1", "mu,lambda",
                                                   "ga",       "umda", "mimic"};
    if (std::find(algos.begin(), algos.end(), algorithm) == algos.end())
        throw ConfigError("unknown algorithm id: \"" + algorithm + "\"");
    if (fitness != "dlb" && fitness != "leading_ones" && fitness != "one_max")
        throw ConfigError("unknown fitness id: \"" + fitness + "\"");
    if (ns.empty()) throw ConfigError("n must hold at least one value");
    for (std::size_t i = 0; i + 1 < ns.size(); ++i)
        if (ns[i] >= ns[i + 1]) throw ConfigError("sweep n list must be strictly increasing");
    for (Eigen::Index n : ns)
        if (n < 1) throw ConfigError("n must be >= 1");
    if (repetitions < 1) throw ConfigError("repetitions must be >= 1");
    if (budget < 0) throw ConfigError("budget must be >= 0");
    if (trajectory_stride < 0) throw ConfigError("trajectory_stride must be >= 0");
    // Parameter strings are validated here so bad ids fail at parse time.
    SelectionSpec::parse(selection);
    parse_crossover(crossover);
    parse_clamp_mode(mimic_clamp);
}

namespace {

// Per-generation snapshot used for trajectory capture and the final record.
struct RunState {
    std::int64_t evals = 0;
    int blocks = 0;
    Fitness best = 0;
    std::optional<int> Z, Z_star;
};

// Samples the trajectory at fixed evaluation strides. A mark t reports the
// last generation completed within t evaluations; runs that stop early pad
// the remaining marks with their terminal state.
class TrajectoryRecorder {
  public:
    TrajectoryRecorder(bool enabled, int run_id, std::int64_t stride, std::int64_t limit,
                       std::vector<TrajectoryPoint>& out)
        : enabled_(enabled), run_id_(run_id), stride_(stride), limit_(limit), next_(stride),
          out_(out) {}

    void on_generation(const RunState& s) {
        if (enabled_) {
            while (next_ <= limit_ && next_ < s.evals) emit(last_ ? *last_ : s);
            last_ = s;
        } else {
            last_ = s;
        }
    }

    void finish() {
        if (!enabled_ || !last_) return;
        while (next_ <= limit_) emit(*last_);
    }

    const std::optional<RunState>& last() const { return last_; }

  private:
    void emit(const RunState& s) {
        out_.push_back({run_id_, next_, s.blocks, s.best, s.Z, s.Z_star});
        next_ += stride_;
    }

    bool enabled_;
    int run_id_;
    std::int64_t stride_, limit_, next_;
    std::optional<RunState> last_;
    std::vector<TrajectoryPoint>& out_;
};

struct ResolvedRun {
    int mu = 0, lambda = 0;
};

RunState state_of(const Individual& best, std::int64_t evals) {
    return {evals, blocks_of(best.genome), best.fitness, std::nullopt, std::nullopt};
}

const Individual& fittest_of(const std::vector<Individual>& pop) {
    const Individual* best = &pop.front();
    for (const Individual& ind : pop)
        if (ind.fitness > best->fitness) best = &ind;
    return *best;
}

RunRecord run_single(const ExperimentConfig& cfg, Eigen::Index n, int run_id,
                     std::vector<TrajectoryPoint>& trajectory_out, ResolvedRun& resolved) {
    const Objective objective = Objective::from_id(cfg.fitness, n);
    const std::int64_t limit = cfg.effective_budget();
    const bool dlb_fitness = objective.kind() == Objective::Kind::Dlb;

    // Resolve population sizes; lambda first because mu may be "lambda/2".
    int lambda = 0, mu = 0;
    if (cfg.algorithm != "mu+1") {
        if (!cfg.lambda) throw ConfigError(cfg.algorithm + ": lambda is required");
        lambda = cfg.lambda->resolve(n, 0);
    }
    if (cfg.algorithm == "1+lambda") {
        mu = 1;
    } else if (cfg.algorithm == "mu+1") {
        if (!cfg.mu) throw ConfigError("mu+1: mu is required");
        mu = cfg.mu->resolve(n, 0);
        lambda = 1; // one offspring per generation
    } else if (cfg.algorithm == "mimic") {
        mu = cfg.mu.value_or(PopulationRule{PopulationRule::Kind::HalfLambda, 0})
                 .resolve(n, lambda);
    } else if (cfg.algorithm == "ga" && cfg.selection.rfind("comma", 0) != 0 && !cfg.mu) {
        mu = lambda; // mu only matters for comma selection
    } else {
        if (!cfg.mu) throw ConfigError(cfg.algorithm + ": mu is required");
        mu = cfg.mu->resolve(n, lambda);
    }
    resolved = {mu, lambda};

    const std::int64_t min_budget = cfg.algorithm == "mu+1" ? mu : lambda;
    if (limit < min_budget) throw ConfigError("budget is smaller than one generation");

    EvaluationBudget budget(limit);
    RngStream rng(cfg.master_seed, static_cast<std::uint64_t>(run_id));
    TrajectoryRecorder recorder(cfg.record_trajectory, run_id, cfg.effective_stride(), limit,
                                trajectory_out);

    if (cfg.algorithm == "umda") {
        EdaConfig eda{EdaConfig::Algorithm::Umda, mu, lambda, ClampMode::TwoSided};
        eda.validate();
        MarginalModel model = MarginalModel::uniform(n);
        while (!budget.done()) {
            UmdaStepResult res = umda_step(model, eda, objective, rng, budget);
            model = std::move(res.model);
            RunState s = state_of(res.population.best(), budget.used);
            if (res.stats) {
                s.Z = res.stats->Z;
                s.Z_star = res.stats->Z_star;
            }
            recorder.on_generation(s);
        }
    } else if (cfg.algorithm == "mimic") {
        EdaConfig eda{EdaConfig::Algorithm::Mimic, mu, lambda, parse_clamp_mode(cfg.mimic_clamp)};
        eda.validate();
        std::vector<Individual> pop;
        pop.reserve(static_cast<std::size_t>(lambda));
        for (int i = 0; i < lambda; ++i)
            pop.push_back(objective.evaluate(sample_uniform_bitstring(n, rng), budget));
        auto eda_state = [&](const std::vector<Individual>& p) {
            RunState s = state_of(fittest_of(p), budget.used);
            if (dlb_fitness) {
                const ZValues z = z_values(p, mu);
                s.Z = z.Z;
                s.Z_star = z.Z_star;
            }
            return s;
        };
        recorder.on_generation(eda_state(pop));
        while (!budget.done()) {
            MimicStepResult res = mimic_step(pop, eda, objective, rng, budget);
            pop = std::move(res.population);
            recorder.on_generation(eda_state(pop));
        }
    } else {
        EaConfig ea;
        ea.variant = EaConfig::parse_variant(cfg.algorithm);
        ea.mu = mu;
        ea.lambda = cfg.algorithm == "mu+1" ? 1 : lambda;
        ea.chi = cfg.chi;
        ea.p_c = cfg.p_c;
        ea.selection = SelectionSpec::parse(cfg.selection);
        ea.crossover = parse_crossover(cfg.crossover);
        ea.validate(n);

        switch (ea.variant) {
            case EaConfig::Variant::OnePlusLambda: {
                Individual inc = objective.evaluate(sample_uniform_bitstring(n, rng), budget);
                recorder.on_generation(state_of(inc, budget.used));
                while (!budget.done()) {
                    inc = step_one_plus_lambda(inc, ea, objective, rng, budget);
                    recorder.on_generation(state_of(inc, budget.used));
                }
                break;
            }
            case EaConfig::Variant::MuPlusOne: {
                std::vector<Individual> pop;
                pop.reserve(static_cast<std::size_t>(mu));
                for (int i = 0; i < mu; ++i)
                    pop.push_back(objective.evaluate(sample_uniform_bitstring(n, rng), budget));
                recorder.on_generation(state_of(fittest_of(pop), budget.used));
                while (!budget.done()) {
                    pop = step_mu_plus_one(std::move(pop), ea, objective, rng, budget);
                    recorder.on_generation(state_of(fittest_of(pop), budget.used));
                }
                break;
            }
            case EaConfig::Variant::MuCommaLambda: {
                std::vector<Individual> parents;
                parents.reserve(static_cast<std::size_t>(mu));
                for (int i = 0; i < mu; ++i)
                    parents.push_back(objective.evaluate(sample_uniform_bitstring(n, rng), budget));
                recorder.on_generation(state_of(fittest_of(parents), budget.used));
                while (!budget.done()) {
                    SortedPopulation next = step_mu_comma_lambda(parents, ea, objective, rng, budget);
                    parents = std::move(next.members);
                    recorder.on_generation(state_of(parents.front(), budget.used));
                }
                break;
            }
            case EaConfig::Variant::Ga: {
                std::vector<Individual> pop;
                pop.reserve(static_cast<std::size_t>(lambda));
                for (int i = 0; i < lambda; ++i)
                    pop.push_back(objective.evaluate(sample_uniform_bitstring(n, rng), budget));
                recorder.on_generation(state_of(fittest_of(pop), budget.used));
                while (!budget.done()) {
                    pop = ga_step(pop, ea, objective, rng, budget);
                    recorder.on_generation(state_of(fittest_of(pop), budget.used));
                }
                break;
            }
        }
    }

    recorder.finish();
    const RunState& last = *recorder.last();

    RunRecord rec;
    rec.run_id = run_id;
    rec.algorithm = cfg.algorithm;
    rec.fitness = cfg.fitness;
    rec.n = n;
    rec.mu = mu;
    rec.lambda = lambda;
    rec.seed = static_cast<std::uint64_t>(run_id);
    // A first optimal sample beyond the limit (inside the final, completing
    // generation) does not count as solved within the budget.
    if (budget.hit_optimum_at && *budget.hit_optimum_at <= limit)
        rec.evals_to_optimum = budget.hit_optimum_at;
    rec.best_fitness = last.best;
    rec.correct_blocks = last.blocks;
    return rec;
}

} // namespace

ExperimentResult run_experiment(const ExperimentConfig& config) {
    config.validate();
    const std::size_t per_n = static_cast<std::size_t>(config.repetitions);
    const std::size_t total = config.ns.size() * per_n;

    std::vector<RunRecord> records(total);
    std::vector<std::vector<TrajectoryPoint>> trajectories(total);
    std::vector<std::string> errors(total);

    parallel_for(static_cast<std::int64_t>(total), [&](std::int64_t run) {
        const std::size_t idx = static_cast<std::size_t>(run);
        const Eigen::Index n = config.ns[idx / per_n];
        try {
            ResolvedRun resolved;
            records[idx] = run_single(config, n, static_cast<int>(run), trajectories[idx], resolved);
        } catch (const std::exception& e) {
            errors[idx] = e.what();
        }
    });
    for (const std::string& err : errors)
        if (!err.empty()) throw ConfigError(err);

    ExperimentResult result;
    result.records = std::move(records);
    for (std::vector<TrajectoryPoint>& t : trajectories)
        result.trajectory.insert(result.trajectory.end(), t.begin(), t.end());
    return result;
}

FiveNumber five_number_summary(std::vector<double> values) {
    if (values.empty()) throw std::invalid_argument("five_number_summary: empty input");
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    auto rank = [&](double p) {
        const std::size_t r = static_cast<std::size_t>(std::ceil(p * static_cast<double>(n)));
        return values[std::max<std::size_t>(r, 1) - 1];
    };
    return {values.front(), rank(0.25), rank(0.5), rank(0.75), values.back()};
}

MeanCi mean_ci95(const std::vector<double>& values) {
    if (values.empty()) throw std::invalid_argument("mean_ci95: empty input");
    const double n = static_cast<double>(values.size());
    double sum = 0;
    for (double v : values) sum += v;
    const double mean = sum / n;
    double ss = 0;
    for (double v : values) ss += (v - mean) * (v - mean);
    const double sd = values.size() > 1 ? std::sqrt(ss / (n - 1)) : 0.0;
    const double half = 1.96 * sd / std::sqrt(n);
    return {mean, mean - half, mean + half, static_cast<std::int64_t>(values.size())};
}

std::vector<TrajectoryQuantileRow> trajectory_quantiles(
    const std::vector<TrajectoryPoint>& points) {
    if (points.empty()) throw std::invalid_argument("trajectory_quantiles: empty input");
    std::map<std::int64_t, std::vector<double>> buckets;
    for (const TrajectoryPoint& p : points)
        buckets[p.t].push_back(static_cast<double>(p.correct_blocks));
    std::vector<TrajectoryQuantileRow> rows;
    rows.reserve(buckets.size());
    for (auto& [t, blocks] : buckets)
        rows.push_back({t, five_number_summary(std::move(blocks))});
    return rows;
}

RuntimeSummary summarize_runtimes(const std::vector<RunRecord>& records,
                                  std::optional<std::int64_t> unsolved_value) {
    if (records.empty()) throw std::invalid_argument("summarize_runtimes: empty input");
    RuntimeSummary s;
    s.runs = static_cast<std::int64_t>(records.size());
    std::vector<double> values;
    for (const RunRecord& r : records) {
        if (r.evals_to_optimum) {
            ++s.solved;
            values.push_back(static_cast<double>(*r.evals_to_optimum));
        } else if (unsolved_value) {
            values.push_back(static_cast<double>(*unsolved_value));
        }
    }
    if (!values.empty()) {
        s.evals = mean_ci95(values);
        s.quantiles = five_number_summary(values);
    }
    return s;
}

ScalingFit fit_scaling(const std::vector<std::pair<double, double>>& n_vs_evals) {
    std::vector<double> distinct;
    for (const auto& [n, e] : n_vs_evals) {
        if (!(n > 0) || !(e > 0))
            throw std::invalid_argument("fit_scaling: n and evals must be positive");
        if (std::find(distinct.begin(), distinct.end(), n) == distinct.end())
            distinct.push_back(n);
    }
    if (distinct.size() < 3)
        throw std::invalid_argument("fit_scaling: need at least 3 distinct n values");

    const Eigen::Index rows = static_cast<Eigen::Index>(n_vs_evals.size());
    Eigen::MatrixXd a(rows, 2);
    Eigen::VectorXd b(rows);
    for (Eigen::Index i = 0; i < rows; ++i) {
        a(i, 0) = std::log2(n_vs_evals[static_cast<std::size_t>(i)].first);
        a(i, 1) = 1.0;
        b(i) = std::log2(n_vs_evals[static_cast<std::size_t>(i)].second);
    }
    const Eigen::Vector2d x = a.colPivHouseholderQr().solve(b);
    return {x(0), x(1)};
}

namespace {

std::ofstream open_for_write(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    return out;
}

void finish_write(std::ofstream& out, const std::string& path) {
    out.flush();
    if (!out) throw IoError("write failed: " + path);
}

} // namespace

void emit_runs_csv(const std::string& path, const std::vector<RunRecord>& records) {
    std::ofstream out = open_for_write(path);
    out << "run_id,algorithm,fitness,n,mu,lambda,seed,evals_to_optimum,best_fitness,"
           "correct_blocks\n";
    for (const RunRecord& r : records) {
        out << r.run_id << ',' << r.algorithm << ',' << r.fitness << ',' << r.n << ',' << r.mu
            << ',' << r.lambda << ',' << r.seed << ',';
        if (r.evals_to_optimum) out << *r.evals_to_optimum;
        out << ',' << r.best_fitness << ',' << r.correct_blocks << '\n';
    }
    finish_write(out, path);
}

void emit_trajectory_csv(const std::string& path, const std::vector<TrajectoryPoint>& points) {
    std::ofstream out = open_for_write(path);
    out << "run_id,t,correct_blocks,best_fitness,Z,Z_star\n";
    for (const TrajectoryPoint& p : points) {
        out << p.run_id << ',' << p.t << ',' << p.correct_blocks << ',' << p.best_fitness << ',';
        if (p.Z) out << *p.Z;
        out << ',';
        if (p.Z_star) out << *p.Z_star;
        out << '\n';
    }
    finish_write(out, path);
}

void emit_summary_outputs(const std::string& dir, const ExperimentResult& result) {
    if (!result.trajectory.empty()) {
        const std::string path = dir + "/trajectory_summary.csv";
        std::ofstream out = open_for_write(path);
        out << "t,min,q1,median,q3,max\n";
        for (const TrajectoryQuantileRow& row : trajectory_quantiles(result.trajectory)) {
            out << row.t << ',' << format_g(row.blocks.min) << ',' << format_g(row.blocks.q1)
                << ',' << format_g(row.blocks.median) << ',' << format_g(row.blocks.q3) << ','
                << format_g(row.blocks.max) << '\n';
        }
        finish_write(out, path);
    }

    const RuntimeSummary s = summarize_runtimes(result.records);
    json summary{{"runs", s.runs}, {"solved", s.solved}};
    if (s.solved > 0) {
        summary["mean_evals"] = s.evals.mean;
        summary["ci95_lo"] = s.evals.lo;
        summary["ci95_hi"] = s.evals.hi;
        summary["min"] = s.quantiles.min;
        summary["q1"] = s.quantiles.q1;
        summary["median"] = s.quantiles.median;
        summary["q3"] = s.quantiles.q3;
        summary["max"] = s.quantiles.max;
    }
    const std::string path = dir + "/runtime_summary.json";
    std::ofstream out = open_for_write(path);
    out << summary.dump(2) << '\n';
    finish_write(out, path);
}

namespace {

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create directory " + dir + ": " + ec.message());
}

} // namespace

void emit_run_outputs(const ExperimentConfig& config, const ExperimentResult& result) {
    ensure_dir(config.out_dir);
    emit_runs_csv(config.out_dir + "/runs.csv", result.records);
    if (config.record_trajectory)
        emit_trajectory_csv(config.out_dir + "/trajectory.csv", result.trajectory);
    emit_summary_outputs(config.out_dir, result);
}

SweepResult run_sweep(const ExperimentConfig& config) {
    SweepResult sweep;
    sweep.experiment = run_experiment(config);

    const std::size_t per_n = static_cast<std::size_t>(config.repetitions);
    std::vector<std::pair<double, double>> fit_points;
    for (std::size_t k = 0; k < config.ns.size(); ++k) {
        SweepRow row;
        row.n = config.ns[k];
        std::vector<double> solved_evals;
        for (std::size_t r = 0; r < per_n; ++r) {
            const RunRecord& rec = sweep.experiment.records[k * per_n + r];
            row.mu = rec.mu;
            row.lambda = rec.lambda;
            ++row.runs;
            if (rec.evals_to_optimum) {
                ++row.solved;
                solved_evals.push_back(static_cast<double>(*rec.evals_to_optimum));
            } else {
                ++row.capped;
            }
        }
        if (!solved_evals.empty()) {
            row.mean_evals = mean_ci95(solved_evals).mean;
            row.median_evals = five_number_summary(solved_evals).median;
            fit_points.emplace_back(static_cast<double>(row.n), row.mean_evals);
        }
        sweep.rows.push_back(row);
    }
    if (fit_points.size() >= 3) {
        sweep.fit = fit_scaling(fit_points);
        sweep.fit_valid = true;
    }
    return sweep;
}

void emit_sweep_outputs(const ExperimentConfig& config, const SweepResult& sweep) {
    ensure_dir(config.out_dir);
    emit_runs_csv(config.out_dir + "/runs.csv", sweep.experiment.records);

    {
        const std::string path = config.out_dir + "/sweep_summary.csv";
        std::ofstream out = open_for_write(path);
        out << "n,mu,lambda,runs,solved,capped,mean_evals,median_evals\n";
        for (const SweepRow& row : sweep.rows) {
            out << row.n << ',' << row.mu << ',' << row.lambda << ',' << row.runs << ','
                << row.solved << ',' << row.capped << ',';
            if (row.solved > 0) out << format_g(row.mean_evals);
            out << ',';
            if (row.solved > 0) out << format_g(row.median_evals);
            out << '\n';
        }
        finish_write(out, path);
    }

    json rows = json::array();
    for (const SweepRow& row : sweep.rows) {
        json r{{"n", row.n},       {"mu", row.mu},         {"lambda", row.lambda},
               {"runs", row.runs}, {"solved", row.solved}, {"capped", row.capped}};
        if (row.solved > 0) {
            r["mean_evals"] = row.mean_evals;
            r["median_evals"] = row.median_evals;
        }
        rows.push_back(r);
    }
    json root{{"rows", rows}};
    if (sweep.fit_valid) root["fit"] = {{"slope", sweep.fit.slope}, {"intercept", sweep.fit.intercept}};
    const std::string path = config.out_dir + "/sweep_summary.json";
    std::ofstream out = open_for_write(path);
    out << root.dump(2) << '\n';
    finish_write(out, path);
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

} // namespace

ExperimentResult read_experiment_csv(const std::string& dir) {
    ExperimentResult result;
    const std::string runs_path = dir + "/runs.csv";
    std::ifstream runs(runs_path);
    if (!runs) throw IoError("cannot open " + runs_path);
    std::string line;
    if (!std::getline(runs, line)) throw IoError("empty runs.csv: " + runs_path);
    while (std::getline(runs, line)) {
        if (line.empty()) continue;
        const auto f = split_csv_line(line);
        if (f.size() != 10) throw IoError("malformed row in " + runs_path + ": " + line);
        RunRecord r;
        r.run_id = std::stoi(f[0]);
        r.algorithm = f[1];
        r.fitness = f[2];
        r.n = std::stoll(f[3]);
        r.mu = std::stoi(f[4]);
        r.lambda = std::stoi(f[5]);
        r.seed = std::stoull(f[6]);
        if (!f[7].empty()) r.evals_to_optimum = std::stoll(f[7]);
        r.best_fitness = std::stoll(f[8]);
        r.correct_blocks = std::stoi(f[9]);
        result.records.push_back(std::move(r));
    }

    const std::string traj_path = dir + "/trajectory.csv";
    std::ifstream traj(traj_path);
    if (traj) {
        if (!std::getline(traj, line)) throw IoError("empty trajectory.csv: " + traj_path);
        while (std::getline(traj, line)) {
            if (line.empty()) continue;
            const auto f = split_csv_line(line);
            if (f.size() != 6) throw IoError("malformed row in " + traj_path + ": " + line);
            TrajectoryPoint p;
            p.run_id = std::stoi(f[0]);
            p.t = std::stoll(f[1]);
            p.correct_blocks = std::stoi(f[2]);
            p.best_fitness = std::stoll(f[3]);
            if (!f[4].empty()) p.Z = std::stoi(f[4]);
            if (!f[5].empty()) p.Z_star = std::stoi(f[5]);
            result.trajectory.push_back(p);
        }
    }
    return result;
}

} // namespace dlbench
