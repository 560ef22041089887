#pragma once

#include "dlbench/core.hpp"
#include "dlbench/fitness.hpp"

#include <string>
#include <vector>

/// Mutation-based evolutionary algorithms — (1+lambda), (mu+1) and the
/// non-elitist (mu,lambda) EA with mutation rate chi/n — plus genetic
/// algorithms with k-tournament, (mu,lambda), linear-ranking and
/// exponential-ranking parent selection.
namespace dlbench {

/// Parent-selection mechanism, parsed from its config identifier:
/// "tournament:k", "comma", "linrank:eta", "exprank:eta".
struct SelectionSpec {
    enum class Kind { Tournament, Comma, LinearRank, ExponentialRank };

    Kind kind = Kind::Tournament;
    int k = 2;        ///< tournament size (draws with replacement)
    double eta = 2.0; ///< ranking parameter; slope in (1,2] for linear, base > 1 for exponential

    /// Rejects unknown identifiers and out-of-range parameters (ConfigError).
    static SelectionSpec parse(const std::string& id);
    std::string to_string() const;
};

enum class CrossoverOp { Uniform, OnePoint };
CrossoverOp parse_crossover(const std::string& id);

struct EaConfig {
    enum class Variant { OnePlusLambda, MuPlusOne, MuCommaLambda, Ga };

    Variant variant = Variant::MuCommaLambda;
    int mu = 1;
    int lambda = 1;
    double chi = 1.0; ///< mutation rate chi/n, chi in (0, n/2)
    double p_c = 0.0; ///< crossover rate (GA only)
    SelectionSpec selection{};
    CrossoverOp crossover = CrossoverOp::Uniform;

    /// Maps "1+lambda", "mu+1", "mu,lambda", "ga"; rejects anything else.
    static Variant parse_variant(const std::string& id);

    double mutation_rate(Eigen::Index n) const { return chi / static_cast<double>(n); }

    /// Full config validation (chi range, p_c range, mu < lambda for the
    /// comma variant, ...). Called at config-parse time by the harness.
    void validate(Eigen::Index n) const;
};

/// Flips each gene independently with the given probability.
BitString mutate_bitwise(const BitString& x, double rate, RngStream& rng);

/// Uniform crossover (each gene from either parent with probability 1/2) or
/// one-point crossover (uniform cut in [1, n-1]).
BitString crossover(const BitString& a, const BitString& b, CrossoverOp op, RngStream& rng);

/// One (mu,lambda) generation: lambda offspring, each a bitwise mutation of a
/// uniformly chosen parent; survivors are the mu fittest offspring under
/// sort_population. Parents are always discarded.
SortedPopulation step_mu_comma_lambda(const std::vector<Individual>& parents, const EaConfig& cfg,
                                      const Objective& objective, RngStream& rng,
                                      EvaluationBudget& budget);

/// One (1+lambda) generation. The incumbent is replaced by the best of the
/// lambda mutants when that one is at least as fit (ties favour a mutant,
/// chosen uniformly among the tied best), so fitness never decreases.
Individual step_one_plus_lambda(const Individual& incumbent, const EaConfig& cfg,
                                const Objective& objective, RngStream& rng,
                                EvaluationBudget& budget);

/// Inserts the offspring, then deletes one individual chosen uniformly among
/// those of worst fitness in the enlarged population.
void plus_one_replace(std::vector<Individual>& pop, Individual offspring, RngStream& rng);

/// One (mu+1) generation: a single offspring from a uniform parent via
/// bitwise mutation, then worst-of-(mu+1) removal with uniform tie-break.
std::vector<Individual> step_mu_plus_one(std::vector<Individual> pop, const EaConfig& cfg,
                                         const Objective& objective, RngStream& rng,
                                         EvaluationBudget& budget);

/// Selects parents from a fitness-sorted population. The rank distribution is
/// fixed per generation, so cumulative weights are built once.
///
/// Selection probabilities, with rank i in [1, lambda] (1 = fittest):
///   tournament:k  best of k draws with replacement, ties uniform
///   comma         uniform over ranks 1..mu
///   linrank:eta   (eta - 2(eta-1)(i-1)/(lambda-1)) / lambda, eta in (1,2]
///   exprank:eta   eta^{-(i-1)} normalised over the lambda ranks, eta > 1
class RankSelector {
  public:
    RankSelector(const SortedPopulation& pop, const SelectionSpec& spec, int mu);

    /// Returns an index into the sorted population.
    std::size_t select(RngStream& rng) const;

  private:
    const SortedPopulation& pop_;
    SelectionSpec spec_;
    int mu_;
    std::vector<double> cumulative_; // ranking kinds only
};

/// One GA generation: each of the lambda offspring is produced by crossover
/// of two selected parents followed by mutation (with probability p_c) or by
/// mutation of one selected parent; the offspring replace the population.
std::vector<Individual> ga_step(const std::vector<Individual>& pop, const EaConfig& cfg,
                                const Objective& objective, RngStream& rng,
                                EvaluationBudget& budget);

} // namespace dlbench
