#pragma once

#include "dlbench/core.hpp"
#include "dlbench/fitness.hpp"
#include "dlbench/oracles.hpp"

#include <optional>
#include <vector>

/// Estimation-of-distribution algorithms: UMDA with margins (univariate
/// marginal model clamped to [1/n, 1-1/n]) and MIMIC with margins
/// (entropy-ordered chain model with ancestral sampling).
namespace dlbench {

/// How MIMIC sampling probabilities are kept away from fixation.
/// TwoSided clamps to [1/n, 1-1/n] like the UMDA borders; OneSided applies
/// only the lower bound R(p) = max{p, 1/n}, the literal counting fix, and
/// lets probabilities reach 1.
enum class ClampMode { TwoSided, OneSided };

ClampMode parse_clamp_mode(const std::string& id); ///< "two_sided" | "one_sided"

struct EdaConfig {
    enum class Algorithm { Umda, Mimic };

    Algorithm algorithm = Algorithm::Umda;
    int mu = 1;
    int lambda = 1;
    ClampMode mimic_clamp = ClampMode::TwoSided;
    // Entropy log base is fixed at 2; chain construction is base-invariant.

    void validate() const {
        if (mu < 1 || lambda < mu) throw ConfigError("eda: 1 <= mu <= lambda required");
    }
};

/// The UMDA probability vector p_t. Every marginal stays inside
/// [1/n, 1-1/n] after initialisation; the initial model is (1/2,...,1/2).
struct MarginalModel {
    Eigen::ArrayXd p;
    long t = 0;

    Eigen::Index n() const { return p.size(); }
    double lower_border() const { return 1.0 / static_cast<double>(n()); }
    double upper_border() const { return 1.0 - 1.0 / static_cast<double>(n()); }
    bool within_borders() const {
        return (p >= lower_border()).all() && (p <= upper_border()).all();
    }

    static MarginalModel uniform(Eigen::Index n);
};

/// Componentwise clamped frequency update:
/// p_i = max{1/n, min{1-1/n, X_i/mu}}. Rejects counts outside [0, mu].
MarginalModel umda_update(const Eigen::ArrayXi& counts, int mu, Eigen::Index n);

/// Samples lambda individuals gene-wise from the marginal model and
/// evaluates them (one budget charge each).
std::vector<Individual> sample_marginal_population(const MarginalModel& model, int lambda,
                                                   const Objective& objective, RngStream& rng,
                                                   EvaluationBudget& budget);

struct UmdaStepResult {
    MarginalModel model;                ///< updated marginals, t advanced by one
    SortedPopulation population;        ///< this iteration's lambda samples, sorted
    std::optional<IterationStats> stats; ///< present when the objective is DLB at w=2
};

/// One UMDA iteration: sample lambda independent individuals, sort with
/// uniform tie-break, update the marginals from the mu fittest.
UmdaStepResult umda_step(const MarginalModel& model, const EdaConfig& cfg,
                         const Objective& objective, RngStream& rng, EvaluationBudget& budget);

/// Empirical binary entropy in bits of a count of ones among `total`
/// observations, with 0 log 0 := 0. Rejects total < 1 and out-of-range ones.
double empirical_entropy(std::int64_t ones, std::int64_t total);

/// Joint counts of a conditioning variable (first index, the predecessor in
/// the chain) and a target variable: n[b][a] = #{X_cond = b, X_target = a}.
struct JointCounts2x2 {
    std::int64_t n[2][2] = {{0, 0}, {0, 0}};

    std::int64_t branch_total(int b) const { return n[b][0] + n[b][1]; }
    std::int64_t total() const { return branch_total(0) + branch_total(1); }
};

/// Empirical conditional entropy H(target | cond) in bits:
/// sum_b p(b) H(target | cond = b), where conditionals are formed with the
/// guarded denominator R(p) = max{p, 1/n} so an empty branch never divides
/// by zero (it contributes weight 0 anyway). Rejects an empty table.
double conditional_entropy(const JointCounts2x2& joint, Eigen::Index n);

/// MIMIC's chain model: permutation pi (pi[0] is the root), the root
/// marginal, and for every later position k the probabilities
/// Pr(X_pi[k] = 1 | X_pi[k-1] = b). `root_p` and `cond_given*` are the
/// clamped values actually used for sampling; the `raw_*` fields keep the
/// unclamped counting estimates. Pr(...=0|b) is 1 minus the stored value.
struct ChainModel {
    std::vector<int> pi;
    double root_p = 0.5;
    Eigen::ArrayXd cond_given0, cond_given1; ///< index k in [1, n); entry 0 unused
    double root_p_raw = 0.5;
    Eigen::ArrayXd raw_given0, raw_given1;

    Eigen::Index n() const { return static_cast<Eigen::Index>(pi.size()); }
};

/// Builds the chain from the selected individuals: the root is the variable
/// of minimum empirical entropy, and each next variable minimises the
/// conditional entropy on its predecessor among the unused ones.
///
/// All comparisons reduce to exact integer count comparisons (entropies are
/// evaluated from canonical count forms, so equal-entropy candidates produce
/// bit-identical values); argmin ties are broken uniformly at random. The
/// resulting order does not depend on the logarithm base; `entropy_log_base`
/// exists so tests can assert that.
ChainModel mimic_build_chain(const std::vector<Individual>& selected, Eigen::Index n,
                             RngStream& rng, ClampMode clamp = ClampMode::TwoSided,
                             double entropy_log_base = 2.0);

/// Ancestral sampling: the root gene first, then each gene from its
/// conditional on the sampled predecessor.
BitString mimic_sample(const ChainModel& chain, RngStream& rng);

struct MimicStepResult {
    std::vector<Individual> population;  ///< lambda fresh samples, evaluated
    ChainModel chain;
    std::optional<IterationStats> stats; ///< of the sorted input population (DLB only)
};

/// One MIMIC iteration: sort the current population (uniform tie-break),
/// build the chain from the mu fittest, sample lambda new individuals.
MimicStepResult mimic_step(const std::vector<Individual>& population, const EdaConfig& cfg,
                           const Objective& objective, RngStream& rng, EvaluationBudget& budget);

/// Z and Z* of a population without a full sort (the C counts need only
/// phi): Z = max{i : C_i >= mu}, Z* = max{i : C_i > 0}.
struct ZValues {
    int Z = 0;
    int Z_star = 0;
};
ZValues z_values(const std::vector<Individual>& population, int mu);

} // namespace dlbench
