#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

/// Core search-space types and the randomness contract shared by every
/// algorithm in the library: fixed-length binary genomes, fitness-sorted
/// populations with uniform tie-breaking, seeded random streams and
/// evaluation-budget accounting.
namespace dlbench {

/// Fitness values are exact integers for every benchmark function, so
/// sorting never has to deal with floating-point ties.
using Fitness = std::int64_t;

/// A candidate solution x in {0,1}^n. Genes hold 0 or 1.
using BitString = Eigen::Array<std::uint8_t, Eigen::Dynamic, 1>;

/// Thrown on invalid experiment configuration (maps to CLI exit code 2).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Thrown on file-system failures, with the offending path in the message
/// (maps to CLI exit code 3).
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A deterministic 64-bit random stream. Streams are addressed by
/// (master_seed, stream_id); the same address yields the same draw sequence
/// within one build, and distinct stream ids give statistically independent
/// streams (one per repetition, one per Monte-Carlo shard).
class RngStream {
  public:
    RngStream(std::uint64_t master_seed, std::uint64_t stream_id = 0);

    std::uint64_t master_seed() const { return master_seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

    /// Uniform double in [0, 1).
    double uniform01();

    /// True with probability p. Requires p in [0, 1].
    bool bernoulli(double p);

    /// Uniform integer in [0, bound). Requires bound >= 1.
    std::int64_t uniform_index(std::int64_t bound);

    std::uint64_t next_u64() { return engine_(); }

    std::mt19937_64& engine() { return engine_; }

  private:
    std::uint64_t master_seed_;
    std::uint64_t stream_id_;
    std::mt19937_64 engine_;
};

/// A fitness-evaluated individual. The fitness is computed exactly once,
/// when the genome is sampled.
struct Individual {
    BitString genome;
    Fitness fitness = 0;
};

/// A population in non-increasing fitness order. Ties are a uniformly random
/// permutation; `tiebreak_draws` records how much randomness sorting consumed
/// (always one draw per member, in member order, so runs are replayable).
struct SortedPopulation {
    std::vector<Individual> members;
    std::size_t tiebreak_draws = 0;

    std::size_t size() const { return members.size(); }
    bool empty() const { return members.empty(); }
    const Individual& best() const { return members.front(); }
};

/// Counts fitness evaluations against a limit. Every sampled genome costs
/// exactly one evaluation, including initial populations; the optimum check
/// happens at sampling time, so `hit_optimum_at` is the evaluation index of
/// the first optimal sample (the runtime T).
struct EvaluationBudget {
    std::int64_t limit = 0;
    std::int64_t used = 0;
    std::optional<std::int64_t> hit_optimum_at;

    explicit EvaluationBudget(std::int64_t limit_) : limit(limit_) {}

    void record_sample(bool is_optimal) {
        ++used;
        if (is_optimal && !hit_optimum_at) hit_optimum_at = used;
    }

    bool exhausted() const { return used >= limit; }
    bool done() const { return hit_optimum_at.has_value() || exhausted(); }
};

/// Uniform random bitstring: each gene independently 1 with probability 1/2.
/// Rejects n < 1.
BitString sample_uniform_bitstring(Eigen::Index n, RngStream& rng);

/// Sorts by fitness, non-increasing. Equal-fitness individuals end up in
/// uniformly random relative order: each member gets one uniform key (drawn
/// in member order) and a stable sort on (fitness desc, key asc) decides.
SortedPopulation sort_population(std::vector<Individual> pop, RngStream& rng);

/// Exact Binomial(trials, p) draw. Rejects p outside [0, 1] or trials < 0.
std::int64_t sample_binomial(std::int64_t trials, double p, RngStream& rng);

} // namespace dlbench
